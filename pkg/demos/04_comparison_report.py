"""
Published values against computed ones
======================================

Build the comparison report. Rows whose published value no formula here
reaches within one order of magnitude are marked, not adjusted.
"""

from mtdecoherence import table1_report

report = table1_report()
print(report.to_text())

for row in report.rows:
    if row.computed:
        best = min(row.computed, key=lambda e: abs(e.seconds - row.paper_value.bounds[0]))
        print(f"{row.label:<48} {row.status}  (closest: {best.method.value} {best.seconds:.2e} s)")

"""Bayesian evidence for dependence in a contingency table.

The data are White's (1959) cross-classification of 707 stomach-cancer
patients by cancer site and blood group.  The Pearson statistic is 12.65 on
6 degrees of freedom, classically significant at the 5% level.  Basing the
Bayes factor on the statistic and matching the Bayesian rejection region to
the 5% test yields evidence of about 3.52 for dependence.

For context, published Bayes factors for these data from Dirichlet-style
priors over the cell probabilities land nearby: 3.02 (Albert's maximized
prior around the independence surface) and 3.06 (Good's mixed-Dirichlet
prior).  Those priors are not implemented here; the statistic-based route
needs only the chi-squared machinery.

Run:  python demos/02_contingency_independence.py
"""

from pathlib import Path

from umpbt import independence_bf, parse_table, pearson_statistic

DATA = Path(__file__).resolve().parent.parent / "data" / "white.csv"

with open(DATA, "rb") as handle:
    table = parse_table(handle, has_header=True, has_row_labels=True)

print("counts (site x blood group):")
width = max(len(label) for label in table.row_labels)
header = " ".join(f"{c:>8}" for c in table.col_labels)
print(f"  {'':<{width}} {header}")
for label, row in zip(table.row_labels, table.counts):
    cells = " ".join(f"{int(c):>8}" for c in row)
    print(f"  {label:<{width}} {cells}")
print(f"  total patients: {table.grand_total}")
print()

statistic, df = pearson_statistic(table)
print(f"Pearson statistic = {statistic:.4f} on {df} degrees of freedom")

result = independence_bf(table, alpha=0.05)
print(f"matched threshold gamma   = {result.gamma:.4f}")
print(f"alternative noncentrality = {result.theta_star:.4f}")
print(f"Bayes factor              = {result.bf:.4f}")
print(f"smallest expected count   = {result.min_expected:.2f} "
      "(chi-squared reference is an asymptotic approximation)")
print()

verdict = "exceeds" if result.bf > result.gamma else "does not exceed"
print(f"The evidence {verdict} the matched threshold, agreeing with the "
      "classical 5% verdict by construction.")

"""How much evidence does a fixed significance level demand?

For each degrees-of-freedom value, matching the Bayesian rejection region
to a classical test of size alpha fixes an evidence threshold gamma.  The
resulting curves quantify the (weak) evidence implied by conventional
significance levels: a 5% chi-squared test never corresponds to a Bayes
factor much above 3.7 anywhere up to 120 degrees of freedom, while a 0.1%
test demands thresholds in the tens.

Writes the plot-ready curve to threshold_vs_df.csv next to this script;
any plotting tool reproduces the figure from those four columns.

Run:  python demos/04_threshold_vs_df_curve.py
"""

from pathlib import Path

from umpbt import DEFAULT_CURVE_ALPHAS, gamma_vs_df_curve

DF_MAX = 120
OUTPUT = Path(__file__).resolve().parent / "threshold_vs_df.csv"

points = gamma_vs_df_curve(DEFAULT_CURVE_ALPHAS, DF_MAX)

lines = ["df,alpha,gamma,theta_star"]
lines += [f"{p.df:.10g},{p.alpha:.10g},{p.gamma:.10g},{p.theta_star:.10g}"
          for p in points]
OUTPUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
print(f"wrote {len(points)} curve points to {OUTPUT.name}")
print()

print(f"{'alpha':>7} {'gamma range over df = 1..' + str(DF_MAX):>34}")
for alpha in DEFAULT_CURVE_ALPHAS:
    gammas = [p.gamma for p in points if p.alpha == alpha]
    print(f"{alpha:>7g} {min(gammas):>16.4f} .. {max(gammas):.4f}")
print()

five = [p.gamma for p in points if p.alpha == 0.05]
print("the 5% curve rises slowly with df:")
for df in (1, 6, 20, 60, 116, 120):
    print(f"  df={df:>3}: gamma = {five[df - 1]:.4f}")
print()
print(f"maximum 5% threshold up to df={DF_MAX}: {max(five):.6f} "
      f"(crosses 3.67 at df=117)")

"""The dyadic transform R_i = r_i + R_{i//2} and the weighted sums it links.

Run with ``python3 demos/03_dyadic_transform.py``.
"""

# %%
from blockseries import (
    ForwardRule,
    PeriodicRule,
    Word,
    forward,
    inverse,
    periodic_r_for_word,
    periodic_series_constant,
    weighted_sum_lhs,
    weighted_sum_rhs,
)

# %% r = 1, 1, 1, ... gives R_i = bit length of i.
R = forward(PeriodicRule.constant(1), 16)
print([int(x) for x in R.to_fractions()])

# %% Alternating r gives R_i = N_1(i) - N_0(i); inverting recovers r exactly.
alt = PeriodicRule((), (1, -1))
R = forward(alt, 16)
print([int(x) for x in R.to_fractions()])
print(inverse(R) == alt.take(16))

# %% Both sides of the weighted identity approach log(4/pi).
print(weighted_sum_lhs(alt, 10**6), weighted_sum_rhs(ForwardRule(alt), 10**6))

# %% A block count is the forward image of a periodic sequence, so its
# series value follows from sums over residue classes.
for text in ["0", "1", "10", "011"]:
    w = Word.parse(text, 2)
    rule = periodic_r_for_word(w)
    c = periodic_series_constant(rule)
    print(f"{text:>4}  period {[int(x) for x in rule.period]}  {c.render()}")

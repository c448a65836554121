"""Closed forms for every short binary block, and the exact identities between them.

Run with ``python3 demos/02_closed_forms.py``.
"""

# %%
from fractions import Fraction
from itertools import product

from blockseries import (
    Deg2,
    QBase,
    Word,
    block_series_base,
    block_series_deg2,
    block_series_deg3,
    block_series_nn1,
    gamma_pm,
    delta_pm,
    partial_sum,
)

# %% Table of deg2 values with a brute-force check at 10^5 terms.
for L in (1, 2, 3):
    for digits in product((0, 1), repeat=L):
        w = Word(2, digits)
        c = block_series_deg2(w)
        res = partial_sum(w, Deg2(), 10**5)
        print(f"{w.text:>3}  {c.evaluate():.10f}  gap {c.evaluate() - res.value:.1e}  {c.render()}")

# %% Sums and differences of the one-digit cases are classical constants.
gp, gm = gamma_pm()
dp, dm = delta_pm()
print("gamma+ =", gp.render(), "| gamma- =", gm.render())
print("delta+ =", dp.render(), "| delta- =", dm.render())

# %% The cubic kernel splits as deg2 - nn1/4; this holds as an exact identity.
w = Word.parse("0110@2")
print(block_series_deg2(w) - block_series_nn1(w) * Fraction(1, 4) == block_series_deg3(w))

# %% Other bases work the same way with the kernel Q(n, B).
for text in ["0", "1", "2", "12"]:
    w = Word.parse(text, 3)
    c = block_series_base(w, 3)
    print(f"{text:>2}@3  {c.evaluate():.10f}  {c.render()}")
print(partial_sum(Word.parse("12@3"), QBase(3), 10**6).value)

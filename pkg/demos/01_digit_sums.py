"""Digit sums, block counts and the series they weight.

Run with ``python3 demos/01_digit_sums.py``.
"""

# %%
import numpy as np

from blockseries import Deg2, NN1, Word, block_series_deg2, block_series_nn1, count_block, partial_sum

# %% Counting blocks. "0" is read in the plain expansion, "01" in the padded one.
for text in ["1", "0", "11", "01", "101"]:
    w = Word.parse(text, 2)
    counts = count_block(np.arange(1, 17), w)
    print(f"N_{text}(1..16) =", counts.tolist())

# %% The binary digit sum weights 1/(2n(2n+1)) and the series lands on a
# combination of gamma, log 2 and log pi.
one = Word.parse("1@2")
exact = block_series_deg2(one)
print(exact.render(), "=", f"{exact.evaluate():.12g}")
for N in (10**2, 10**4, 10**6):
    res = partial_sum(one, Deg2(), N)
    print(f"N = {N:>7}: {res.value:.12f}  (tail <= {res.tail_bound:.2e})")

# %% Same digit sum, weight 1/(n(n+1)): the answer is 2 log 2, so exp gives 4.
c = block_series_nn1(one)
print(c.render(), "->", np.exp(c.evaluate()))
print(partial_sum(one, NN1(), 10**6).to_json())

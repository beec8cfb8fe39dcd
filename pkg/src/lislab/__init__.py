"""Monte Carlo laboratory for longest-increasing-subsequence limit laws.

The package ties together four layers that can each be exercised on its own:

* ``alphabet`` / ``lis`` -- random words over ordered alphabets and two
  independent exact algorithms for the longest weakly increasing subsequence.
* ``brownian`` -- correlated Brownian grid paths and the ordered-time max
  functionals that describe the limiting LIS fluctuations.
* ``rmt`` -- GUE / traceless-GUE sampling with a self-contained Hermitian
  eigensolver, plus 2x2 closed forms.
* ``tracy_widom`` -- the Tracy-Widom F2 distribution by two independent
  numerical routes (Painleve II and an Airy-kernel Fredholm determinant).

``stats`` supplies the empirical-distribution machinery (ECDF, KS tests,
stochastic dominance) used to confront samples with reference laws, and
``cli`` orchestrates seeded, reproducible experiments.
"""

__version__ = "0.1.0"

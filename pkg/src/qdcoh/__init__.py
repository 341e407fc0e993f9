"""Exact sheaf-cohomology computations on smooth split quadrics over F_p.

The package computes cohomology tables of vector bundles on a smooth
split quadric hypersurface of dimension n <= 4 in characteristic p,
with two independent routes to the main vanishing statement for the
endomorphism bundle of the Frobenius pushforward of the structure
sheaf: a direct computation from graded free resolutions, and a
replayable certificate assembled from exact-sequence bookkeeping.

Modules
-------
fplinalg    dense exact linear algebra over F_p (numpy-backed)
polyring    graded polynomial arithmetic for the ambient ring and the
            quadric quotient ring
grmod       graded module presentations and the operations on them,
            including Frobenius pullback/pushforward and minimal free
            resolutions over the ambient ring
cohomology  cohomology tables via graded local duality, closed forms
            for line bundles, Serre duality and Kunneth helpers
bundles     matrix factorizations, spinor bundles, truncated-Koszul
            kernels and the Frobenius/symmetric-power exact sequence
theorem     the direct oracle, sound exact-sequence bound propagation,
            and certificate assembly/verification
cli         the ``qd`` command line tool
"""

__version__ = "0.1.0"

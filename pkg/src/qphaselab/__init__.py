"""Quantum phase classification lab.

Partitioned quantum Neyman-Pearson tests built from partial tomography,
with order-parameter and QCNN baselines, on the 1D cluster-Ising model.
"""

__version__ = "0.1.0"

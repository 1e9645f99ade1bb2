"""
qentropy: SVD entropy of stock-return panels on a simulated quantum computer

Amplitude-encodes normalized log returns, prepares the encoded state with
genetically synthesized or variationally trained circuits, and recovers the
correlation spectrum with a variational Schmidt decomposition.
"""

__version__ = "0.1.0"

"""
Computational core: statevector simulation, market data, circuit synthesis,
variational decomposition and the amplitude-encoding baseline.

Everything here is a pure function of its inputs and seeds.
"""

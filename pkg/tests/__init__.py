"""
Test package for the vanishing-point reconstructor.
"""
"""
CLI package for the vanishing-point reconstructor
"""

"""Algebraic kernels: words, presentations, Coxeter/Garside engines, linear representations."""

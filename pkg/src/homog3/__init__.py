"""Homogeneous Riemannian structures on three-dimensional metric Lie algebras, exactly."""

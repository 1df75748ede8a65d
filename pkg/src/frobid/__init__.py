"""Frobenius classes in splitting fields via class resolvents."""

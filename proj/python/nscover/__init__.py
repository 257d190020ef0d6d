"""Covering-space representations of mapping class groups of N_{2r+1}.

Exact-arithmetic bindings over the C++ core: homology models of finite
abelian covers, the representations rho^{alpha,beta} and varrho, and the
elementary-matrix certificate engine.
"""

try:
    from ._nscover import System, orientation_info
except ImportError:  # build-tree layout: the extension sits next to the package on sys.path
    from _nscover import System, orientation_info

__all__ = ["System", "orientation_info"]

"""Constructions and symmetry analysis of tetravalent graphs of order 6p^2.

The subpackages are layered: :mod:`perm` and :mod:`groups` at the bottom,
then :mod:`graphs` and :mod:`constructions`, the automorphism engine in
:mod:`symmetry`, :mod:`coverings`, and the :mod:`census` command line on top.
"""

from .graphs import Graph, load_graph, read_graph, save_graph, write_graph
from .perm import Permutation, PermGroup, schreier_sims

__version__ = "0.1.0"

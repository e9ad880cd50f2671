# arckit/__init__.py
from arckit.arc_model import ArcPairRelation, ChordModel, CircularArcModel
from arckit.claims import ClaimReport, Fixture
from arckit.config import Config
from arckit.decomposition import Join, MDTree, NodeLabel
from arckit.enumeration import EnumerationResult
from arckit.errors import ArckitError
from arckit.graph_core import Graph, VertexPairRelation

__all__ = ['ArcPairRelation', 'ChordModel', 'CircularArcModel', 'ClaimReport', 'Fixture', 'Config',
           'Join', 'MDTree', 'NodeLabel', 'EnumerationResult', 'ArckitError', 'Graph', 'VertexPairRelation']

"""Translations between covers and other representations."""
from .sadic import Substitution, SAdicSystem, sadic_to_cover, cover_to_sadic
from .rauzy import LanguageOracle, rauzy_graph, rauzy_tower, classify_sturmian_level
from .bratteli import (BVEdge, BrattelliDiagram, BVTranslation, cover_to_bv, bv_to_cover,
                       follower_relations, source_relation, raw_source_classes)
from .kakutani import KRTower, validate_kr, kr_to_cover, kr_column_matrix, substitution_kr_tower

"""Exact plane geometry: order types, duality, gadgets and arrangement reductions."""
from .arrangement import (Arrangement, CurveDescription, arrangement_cells, arrangement_from_lines,
                          curve_from_arrangement, parse_arrangement, udg_instance)
from .artgallery import artgallery_inversion_check, inversion_gadget
from .core import (GeneralLine, OrderType, PartialOrderType, Point, SlopeLine,
                   check_partial_order_type, cyclic_order, dual, order_type, orient,
                   parse_lines, parse_points)
from .projective import ProjectiveMap, projective_send_to_infinity
from .staudt import GadgetConfig, multiplication_ratios_hold, staudt_gadget

"""Exact linear relations over QQ and GF(p), their decompositions and a theorem checker."""

from .decompose import (CospanDecomposition, WireShape, canonical_wire_relation, classify,
                        classify_shape, cospan_decompose, cospan_dict_rows, det_witness,
                        inj_witness, sur_witness, total_witness, wire_shape)
from .errors import FieldError, InconsistencyError, ShapeError
from .field import GF, QQ, FieldSpec, Scalar
from .matrix import (CanonicalDecomposition, Matrix, canonical_decomposition, image_basis,
                     inverse, kernel_basis, left_inverse, matrix, rank, rref, right_inverse,
                     solve)
from .pair import (PairDecomposition, SubspaceReport, pair_decompose, subspace_report,
                   uniqueness_defect, zassenhaus)
from .relation import (LinearRelation, PropertyReport, compose, direct_product, domain,
                       from_cospan, from_rows, from_span, from_subspace_basis, generator,
                       graph_of_map, identity, image, includes, indeterminacy, join, kernel,
                       meet, opposite, properties, subspace)

__version__ = "0.1.0"

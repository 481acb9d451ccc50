"""Tubal tensor algebra: *_M products, t-SVD compression and tubal ring discovery.

Tubes are 1-d float arrays of length n; tensors are float arrays of shape (m, p, n).
"""

from ._tubal import (
    DiscoveryReport,
    TransformSpec,
    TSVD,
    TubalError,
    canonical_transform,
    classify_ring,
    complex_field,
    conjugate,
    dft,
    equivalent_transforms,
    find_transform,
    herm_transpose,
    idempotent_of,
    identity_tensor,
    identity_transform,
    isomorphism_to_canonical,
    leq,
    read_tensor,
    skew_dft,
    split_complex,
    star,
    tensor_star,
    to_transform,
    transform_from_name,
    tsvd,
    unit,
    vandermonde,
    walsh_hadamard,
    weak_inverse,
    write_tensor,
)

__all__ = [name for name in dir() if not name.startswith("_")]

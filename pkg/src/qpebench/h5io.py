"""HDF5 exchange formats for problems and statevectors.

Problem files (format_version 1):
    /matrix/real, /matrix/imag          float64, shape (2^n_mat, 2^n_mat)
    /eigenvector/real, /eigenvector/imag float64, length 2^n_mat
    attrs: n_mat (int), format_version (int), optional reference_phase (float)

Statevector files (format_version 1):
    /statevector/real, /statevector/imag float64, length 2^(n_meas + n_mat)
    attrs: n_meas, n_mat, format_version, bit_convention (string)

Complex payloads are stored as separate real/imag float64 datasets for
cross-tool portability; round-trips are bit-exact.
"""

from __future__ import annotations

import numpy as np
import h5py

from .core import RegisterLayout, StateVector
from .problems import Provenance, SpectralProblem
from .core import DenseOperator

FORMAT_VERSION = 1

BIT_CONVENTION = (
    "amplitude index bit q encodes qubit q (LSB first); qubits 0..n_meas-1 are "
    "measurement wires; outcome m has bit (n_meas-1-q) equal to index bit q, "
    "so wire 0 is the most significant bit of m"
)


class FileFormatError(Exception):
    """Missing dataset/attribute or unsupported format version."""


class DimensionError(FileFormatError):
    """Dataset shapes violate the strict power-of-two layout rule."""


def _require_dataset(f: h5py.File, name: str) -> np.ndarray:
    if name not in f:
        raise FileFormatError(f"missing dataset {name!r}")
    return np.asarray(f[name], dtype=np.float64)


def _require_attr(f: h5py.File, name: str):
    if name not in f.attrs:
        raise FileFormatError(f"missing attribute {name!r}")
    return f.attrs[name]


def _check_version(f: h5py.File) -> None:
    version = int(_require_attr(f, "format_version"))
    if version != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format_version {version}")


def write_problem(path, problem: SpectralProblem, eigenvector_index: int) -> None:
    """Write the matrix plus one selected eigenvector."""
    vec = problem.eigenvector(eigenvector_index)
    with h5py.File(path, "w") as f:
        f.create_dataset("/matrix/real", data=problem.matrix.entries.real)
        f.create_dataset("/matrix/imag", data=problem.matrix.entries.imag)
        f.create_dataset("/eigenvector/real", data=vec.real)
        f.create_dataset("/eigenvector/imag", data=vec.imag)
        f.attrs["n_mat"] = problem.n_mat
        f.attrs["format_version"] = FORMAT_VERSION
        if problem.reference_phases is not None:
            f.attrs["reference_phase"] = float(
                problem.reference_phases[eigenvector_index]
            )


def read_problem(path) -> SpectralProblem:
    """Read a problem file; unitarity is deliberately not required."""
    with h5py.File(path, "r") as f:
        _check_version(f)
        n_mat = int(_require_attr(f, "n_mat"))
        mat_re = _require_dataset(f, "/matrix/real")
        mat_im = _require_dataset(f, "/matrix/imag")
        vec_re = _require_dataset(f, "/eigenvector/real")
        vec_im = _require_dataset(f, "/eigenvector/imag")
        phase = f.attrs.get("reference_phase")

    d = 1 << n_mat
    if mat_re.shape != mat_im.shape or vec_re.shape != vec_im.shape:
        raise DimensionError("real and imaginary dataset shapes differ")
    if mat_re.shape != (d, d):
        raise DimensionError(
            f"matrix shape {mat_re.shape} must strictly be ({d}, {d}) for n_mat={n_mat}"
        )
    if vec_re.shape != (d,):
        raise DimensionError(
            f"eigenvector length {vec_re.shape} must strictly be {d} for n_mat={n_mat}"
        )
    return SpectralProblem(
        n_mat=n_mat,
        matrix=DenseOperator(mat_re + 1j * mat_im),
        eigenvectors=(vec_re + 1j * vec_im).reshape(d, 1),
        reference_phases=None if phase is None else np.array([float(phase)]),
        provenance=Provenance.EXTERNAL,
    )


def write_statevector(path, state: StateVector) -> None:
    with h5py.File(path, "w") as f:
        f.create_dataset("/statevector/real", data=state.amplitudes.real)
        f.create_dataset("/statevector/imag", data=state.amplitudes.imag)
        f.attrs["n_meas"] = state.layout.n_meas
        f.attrs["n_mat"] = state.layout.n_mat
        f.attrs["format_version"] = FORMAT_VERSION
        f.attrs["bit_convention"] = BIT_CONVENTION


def read_statevector(path) -> StateVector:
    with h5py.File(path, "r") as f:
        _check_version(f)
        n_meas = int(_require_attr(f, "n_meas"))
        n_mat = int(_require_attr(f, "n_mat"))
        re = _require_dataset(f, "/statevector/real")
        im = _require_dataset(f, "/statevector/imag")
    if re.shape != im.shape:
        raise DimensionError("real and imaginary dataset shapes differ")
    layout = RegisterLayout(n_meas, n_mat)
    if re.shape != (layout.dim,):
        raise DimensionError(
            f"statevector length {re.shape} does not match 2^{layout.n_total}"
        )
    return StateVector(layout, re + 1j * im)

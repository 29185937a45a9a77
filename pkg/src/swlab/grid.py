"""Discretized fields on the flat 3-torus and finite periodic cylinders.

Discretization is pseudo-spectral: fields live in truncated Fourier space
(band limit |m_j| <= n_j/2 - 1, empty Nyquist slots), nonlinear terms are
evaluated on a 2x zero-padded collocation grid (comfortably past the 3/2
dealiasing rule, and exact for the cubic integrands of the action), then
projected back to the band.  Axis order is (x, y, t).

Spin structures enter as half-integer momentum offsets: the stored spinor
array is the periodic part chi of psi = exp(i kappa.x / 2) chi, where
kappa_j in {0, 1} are the offsets.  All bilinear covariant expressions
(|psi|^2, pairings, a.psi) are phase-free, so chi is the only thing a
computation ever touches; derivatives acquire the offset shift.

The "cylinder" geometry is a flat 3-torus with a stretched periodic t-axis
(length L_t).  Boundary analysis of genuinely finite necks is the job of
the neck module.
"""

from __future__ import annotations

import functools
import json
import struct
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

_MAGIC = b"SWLBFLD1"
_LAYOUT = ("A_x", "A_y", "A_t", "Re_z", "Im_z", "Re_w", "Im_w")


@dataclass(frozen=True)
class Grid3:
    geometry: str = "torus3"  # torus3 | cylinder
    sizes: tuple[int, int, int] = (8, 8, 8)
    lengths: tuple[float, float, float] = (TWO_PI, TWO_PI, TWO_PI)
    spin_offsets: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self):
        if self.geometry not in ("torus3", "cylinder"):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        if any(n < 4 for n in self.sizes):
            raise ValueError("grid sizes must be >= 4 in every direction")
        if any(n % 2 for n in self.sizes):
            raise ValueError("grid sizes must be even")
        if any(k not in (0, 1) for k in self.spin_offsets):
            raise ValueError("spin offsets are 0/1 flags")
        if abs(self.lengths[0] - TWO_PI) > 1e-12 or abs(self.lengths[1] - TWO_PI) > 1e-12:
            raise ValueError("x and y are unit circles of length 2*pi")
        if self.geometry == "torus3" and abs(self.lengths[2] - TWO_PI) > 1e-12:
            raise ValueError("torus3 has a periodic t-axis of length 2*pi")

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @property
    def band_limit(self) -> int:
        return min(self.sizes) // 2 - 1


@functools.lru_cache(maxsize=32)
def kit(grid: Grid3) -> "SpectralKit":
    return SpectralKit(grid)


class SpectralKit:
    """FFT workspace bound to one grid: frequencies, derivatives, padding."""

    def __init__(self, grid: Grid3):
        self.grid = grid
        self.sizes = grid.sizes
        self.pad_sizes = tuple(2 * n for n in grid.sizes)
        self.vol = grid.volume
        self.npts = int(np.prod(grid.sizes))
        self.npts_pad = int(np.prod(self.pad_sizes))
        self.freqs = []
        self.offsets = []
        for ax, (n, length, koff) in enumerate(zip(grid.sizes, grid.lengths, grid.spin_offsets)):
            base = TWO_PI / length
            k = base * np.fft.fftfreq(n, d=1.0 / n)
            shape = [1, 1, 1]
            shape[ax] = n
            self.freqs.append(k.reshape(shape))
            self.offsets.append(base * koff / 2.0)
        self.freqs_pad = []
        for ax, (n, length) in enumerate(zip(self.pad_sizes, grid.lengths)):
            base = TWO_PI / length
            k = base * np.fft.fftfreq(n, d=1.0 / n)
            shape = [1, 1, 1]
            shape[ax] = n
            self.freqs_pad.append(k.reshape(shape))

    # -- coordinates -------------------------------------------------------
    def coords(self, axis: int, padded: bool = False) -> np.ndarray:
        n = (self.pad_sizes if padded else self.sizes)[axis]
        x = self.grid.lengths[axis] * np.arange(n) / n
        shape = [1, 1, 1]
        shape[axis] = n
        return x.reshape(shape)

    # -- band limiting -----------------------------------------------------
    def band_mask(self, padded: bool = False) -> np.ndarray:
        sizes = self.pad_sizes if padded else self.sizes
        mask = np.ones(sizes, dtype=bool)
        for ax, (n_here, n_small) in enumerate(zip(sizes, self.sizes)):
            idx = np.fft.fftfreq(n_here, d=1.0 / n_here).astype(int)
            keep = np.abs(idx) <= self.sizes[ax] // 2 - 1
            shape = [1, 1, 1]
            shape[ax] = n_here
            mask &= keep.reshape(shape)
        return mask

    def band_limit(self, field: np.ndarray, real: bool) -> np.ndarray:
        spec = np.fft.fftn(field, axes=(-3, -2, -1))
        spec *= self.band_mask()
        out = np.fft.ifftn(spec, axes=(-3, -2, -1))
        return out.real if real else out

    # -- derivatives -------------------------------------------------------
    def deriv_real(self, field: np.ndarray, axis: int, padded: bool = False) -> np.ndarray:
        freqs = self.freqs_pad if padded else self.freqs
        spec = np.fft.fftn(field, axes=(-3, -2, -1))
        spec *= 1j * freqs[axis]
        return np.fft.ifftn(spec, axes=(-3, -2, -1)).real

    def deriv_spinor(self, chi: np.ndarray, axis: int, padded: bool = False) -> np.ndarray:
        """(d/dx_j + i off_j) chi: the derivative seen by the twisted section."""
        freqs = self.freqs_pad if padded else self.freqs
        spec = np.fft.fftn(chi, axes=(-3, -2, -1))
        spec *= 1j * (freqs[axis] + self.offsets[axis])
        return np.fft.ifftn(spec, axes=(-3, -2, -1))

    # -- padding / truncation ----------------------------------------------
    def _embed(self, spec: np.ndarray, split_nyquist: bool) -> np.ndarray:
        out_shape = spec.shape[:-3] + self.pad_sizes
        out = np.zeros(out_shape, dtype=complex)
        src: list = [slice(None)] * spec.ndim
        dst: list = [slice(None)] * spec.ndim
        n0, n1, n2 = self.sizes
        # copy the four corners per axis via nested half-ranges
        halves = []
        for ax, n in enumerate(self.sizes):
            h = n // 2
            halves.append([(slice(0, h), slice(0, h)),
                           (slice(h, n), slice(2 * n - (n - h), 2 * n))])
        for i0, (s0, d0) in enumerate(halves[0]):
            for i1, (s1, d1) in enumerate(halves[1]):
                for i2, (s2, d2) in enumerate(halves[2]):
                    src[-3:], dst[-3:] = [s0, s1, s2], [d0, d1, d2]
                    out[tuple(dst)] = spec[tuple(src)]
        if split_nyquist:
            for ax, n in enumerate(self.sizes):
                nyq = 2 * n - n // 2  # where -n/2 landed in the padded array
                idx_lo: list = [slice(None)] * out.ndim
                idx_lo[ax - 3] = nyq
                idx_hi: list = [slice(None)] * out.ndim
                idx_hi[ax - 3] = n // 2
                half = 0.5 * out[tuple(idx_lo)]
                out[tuple(idx_lo)] = half
                out[tuple(idx_hi)] += half
        return out

    def pad_values(self, field: np.ndarray, real: bool) -> np.ndarray:
        """Spectral interpolation of grid values onto the 2x padded grid."""
        spec = np.fft.fftn(field, axes=(-3, -2, -1))
        big = self._embed(spec, split_nyquist=real)
        vals = np.fft.ifftn(big, axes=(-3, -2, -1)) * (self.npts_pad / self.npts)
        return vals.real if real else vals

    def truncate_values(self, vals: np.ndarray, real: bool) -> np.ndarray:
        """Project padded-grid values onto the band of the original grid."""
        spec = np.fft.fftn(vals, axes=(-3, -2, -1))
        small_shape = vals.shape[:-3] + self.sizes
        out = np.zeros(small_shape, dtype=complex)
        gathers = []
        for ax, n in enumerate(self.sizes):
            h = n // 2
            idx = np.concatenate([np.arange(0, h), np.arange(2 * n - (n - h), 2 * n)])
            gathers.append(idx)
        gat = np.ix_(*gathers)
        full: list = [slice(None)] * (spec.ndim - 3)
        out[...] = spec[tuple(full) + gat]
        # clear the Nyquist rows: outputs are band-limited
        for ax, n in enumerate(self.sizes):
            idx: list = [slice(None)] * out.ndim
            idx[ax - 3] = n // 2
            out[tuple(idx)] = 0.0
        small = np.fft.ifftn(out, axes=(-3, -2, -1)) * (self.npts / self.npts_pad)
        return small.real if real else small

    # -- integrals -----------------------------------------------------------
    def integral(self, values: np.ndarray, padded: bool = True) -> float:
        """Integral over the torus of a (real) integrand given by grid values."""
        n = self.npts_pad if padded else self.npts
        return float(np.sum(values.real) / n * self.vol)


def band_limited_noise(grid: Grid3, rng: np.random.Generator, real: bool,
                       shape_prefix=(), amplitude: float = 1.0) -> np.ndarray:
    """Random smooth field: band-limited white noise with decaying tail."""
    k = kit(grid)
    shape = shape_prefix + grid.sizes
    vals = rng.standard_normal(shape)
    if not real:
        vals = vals + 1j * rng.standard_normal(shape)
    weight = np.zeros(grid.sizes)
    kk = np.sqrt(sum((f / (TWO_PI / L)) ** 2 for f, L in zip(k.freqs, grid.lengths)))
    weight = 1.0 / (1.0 + kk**2)
    spec = np.fft.fftn(vals, axes=(-3, -2, -1)) * weight * k.band_mask()
    out = np.fft.ifftn(spec, axes=(-3, -2, -1))
    out = out.real if real else out
    scale = np.max(np.abs(out))
    return amplitude * out / max(scale, 1e-300)


@dataclass(frozen=True)
class FieldState:
    """A pair (A, psi) on a grid: A = i * a with real coefficient fields a,
    psi stored through its periodic part chi (shape (2, nx, ny, nt))."""

    a: np.ndarray
    chi: np.ndarray
    grid: Grid3

    def __post_init__(self):
        if self.a.shape != (3,) + self.grid.sizes:
            raise ValueError(f"A-field shape {self.a.shape} does not match grid")
        if self.chi.shape != (2,) + self.grid.sizes:
            raise ValueError(f"spinor shape {self.chi.shape} does not match grid")
        if not (np.all(np.isfinite(self.a)) and np.all(np.isfinite(self.chi))):
            raise ValueError("field values must be finite")
        self.a.setflags(write=False)
        self.chi.setflags(write=False)

    def replace(self, a=None, chi=None) -> "FieldState":
        return FieldState(self.a if a is None else a,
                          self.chi if chi is None else chi, self.grid)


def zero_state(grid: Grid3) -> FieldState:
    return FieldState(np.zeros((3,) + grid.sizes),
                      np.zeros((2,) + grid.sizes, dtype=complex), grid)


def random_state(grid: Grid3, rng: np.random.Generator, amplitude: float = 1.0) -> FieldState:
    a = band_limited_noise(grid, rng, real=True, shape_prefix=(3,), amplitude=amplitude)
    chi = band_limited_noise(grid, rng, real=False, shape_prefix=(2,), amplitude=amplitude)
    return FieldState(a, chi, grid)


# ---------------------------------------------------------------------------
# Serialization: 16-byte header, little-endian float64 arrays, JSON sidecar
# ---------------------------------------------------------------------------

def save_state(state: FieldState, path: str) -> None:
    arrays = [state.a[0], state.a[1], state.a[2],
              state.chi[0].real, state.chi[0].imag,
              state.chi[1].real, state.chi[1].imag]
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", 1, 0))
        for arr in arrays:
            fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())
    sidecar = {
        "geometry": state.grid.geometry,
        "sizes": list(state.grid.sizes),
        "lengths": list(state.grid.lengths),
        "spin_offsets": list(state.grid.spin_offsets),
        "layout": list(_LAYOUT),
        "dtype": "<f8",
    }
    with open(path + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=1)
        fh.write("\n")


def load_state(path: str) -> FieldState:
    with open(path + ".json") as fh:
        sidecar = json.load(fh)
    grid = Grid3(sidecar["geometry"], tuple(sidecar["sizes"]),
                 tuple(sidecar["lengths"]), tuple(sidecar["spin_offsets"]))
    count = int(np.prod(grid.sizes))
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _MAGIC:
            raise ValueError(f"not a field container: bad magic {magic!r}")
        version, _ = struct.unpack("<II", fh.read(8))
        if version != 1:
            raise ValueError(f"unsupported container version {version}")
        raw = np.frombuffer(fh.read(7 * count * 8), dtype="<f8")
    parts = raw.reshape(7, *grid.sizes)
    a = np.array(parts[0:3])
    chi = np.array(parts[3] + 1j * parts[4]), np.array(parts[5] + 1j * parts[6])
    return FieldState(a, np.stack(chi), grid)

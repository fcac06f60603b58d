import numpy as np
import pytest

from helwave.fourier import GridScalarField, GridVectorField, SpectralScalar, fft_scalar, wavenumbers

_CRITERIA = []


def random_real_scalar(n, seed, zero_mean=True, band=None):
    """Real scalar spectrum with the Nyquist plane (or all ``|k_i| > band``) removed."""
    rng = np.random.default_rng(seed)
    F = fft_scalar(GridScalarField(n, rng.standard_normal((n, n, n))))
    coeffs = F.coeffs.copy()
    if band is not None:
        k = np.abs(wavenumbers(n))
        keep = (k[:, None, None] <= band) & (k[None, :, None] <= band) & (k[None, None, :] <= band)
        coeffs[~keep] = 0.0
    if zero_mean:
        coeffs[0, 0, 0] = 0.0
    return SpectralScalar(n, coeffs, True)


def random_real_vector(n, seed):
    rng = np.random.default_rng(seed)
    return GridVectorField(n, rng.standard_normal((3, n, n, n)))


class Verdict:
    """Collects named checks so that every measured value is reported even
    when an early one fails."""

    def __init__(self, node):
        self.node = node
        self.items = []

    def le(self, name, value, bound):
        self.items.append((name, bool(value <= bound), f"{name} {value:.3g} <= {bound:.3g}"))

    def lt(self, name, value, bound):
        self.items.append((name, bool(value < bound), f"{name} {value:.3g} < {bound:.3g}"))

    def ge(self, name, value, bound):
        self.items.append((name, bool(value >= bound), f"{name} {value:.3g} >= {bound:.3g}"))

    def within(self, name, value, lo, hi):
        self.items.append((name, bool(lo <= value <= hi), f"{name} {value:.3f} in [{lo}, {hi}]"))

    def true(self, name, ok, text=None):
        self.items.append((name, bool(ok), text or name))

    def finish(self):
        failed = [text for _, ok, text in self.items if not ok]
        detail = "; ".join(("" if ok else "FAILED ") + text for _, ok, text in self.items)
        self.node.user_properties.append(("detail", detail))
        assert not failed, "; ".join(failed)


@pytest.fixture
def verdict(request):
    return Verdict(request.node)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, label = marker.args
    detail = dict(report.user_properties).get("detail", "")
    status = "PASS" if report.passed else "FAIL"
    _CRITERIA.append((number, item.name, f"{status}  criterion {number:<5} {label} [{item.name}] {detail}"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    def order(entry):
        label = str(entry[0])
        digits = "".join(c for c in label if c.isdigit())
        return int(digits), label, entry[1]

    for _, _, line in sorted(_CRITERIA, key=order):
        terminalreporter.write_line(line)

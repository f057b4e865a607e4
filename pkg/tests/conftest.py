from pathlib import Path
import sys

import pytest

# Add only the src directory to path, not the project root
# This prevents accidentally picking up sibling workspace projects
project_root = Path(__file__).parent.parent
src_path = str(project_root / "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from semigroup_lab.spectra import builtin_family  # noqa: E402

SPECTRA_DIR = project_root / "config" / "spectra"


@pytest.fixture(scope="session")
def harmonic():
    """λ_n = −1/n + i n, n ≤ 1000."""
    return builtin_family("harmonic", n_max=1000)


@pytest.fixture(scope="session")
def single():
    """One mode at λ = −1."""
    return builtin_family("single", [1.0])


@pytest.fixture(scope="session")
def logdecay():
    return builtin_family("logdecay", n_max=300)


@pytest.fixture
def spectra_dir():
    return SPECTRA_DIR

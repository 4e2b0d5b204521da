import pytest

from pograph.oracles import enumerate_connected, enumerate_po


@pytest.fixture(scope="session")
def po_corpus_7():
    """All connected PO graphs with diagrams, one per iso class, n <= 7."""
    out = []
    for n in range(2, 8):
        out.extend(enumerate_po(n))
    return out


@pytest.fixture(scope="session")
def po_corpus_6():
    out = []
    for n in range(2, 7):
        out.extend(enumerate_po(n))
    return out


@pytest.fixture(scope="session")
def connected_corpus_6():
    """All connected graphs up to iso, n <= 6 (PO or not)."""
    out = []
    for n in range(2, 7):
        out.extend(enumerate_connected(n))
    return out

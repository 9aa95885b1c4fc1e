import pytest

from econmine.corpus import CandidateQuerySet


@pytest.fixture
def table_queries():
    """The bundled 2012 query sets in candidate order."""
    return [
        CandidateQuerySet(
            "obama", ("barack obama", "@barackobama", "#barackobama", "#obama")
        ),
        CandidateQuerySet(
            "romney", ("mitt romney", "@mittromney", "#mittromney", "#romney")
        ),
    ]

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from cohorder.estimators import ChannelTransformer, CoherenceTransformer, OrderingAnalyzer
from cohorder.exceptions import InvalidState
from cohorder.measures import c_l1, c_r
from cohorder.ordering import StateFamily


@pytest.fixture
def qubits(rng):
    return np.array(StateFamily.fixed_mixedness(0.7, 25, rng).states)


def test_coherence_transformer(qubits):
    tr = CoherenceTransformer(measures=("l1", "rel"))
    X = tr.fit_transform(qubits)
    assert X.shape == (25, 2)
    assert X[3, 0] == pytest.approx(c_l1(qubits[3]))
    assert X[3, 1] == pytest.approx(c_r(qubits[3]))
    assert list(tr.get_feature_names_out()) == ["C_l1", "C_r"]


def test_pipeline_and_clone(qubits):
    pipe = make_pipeline(ChannelTransformer("pdc", 0.5), CoherenceTransformer(("l1",)))
    out = pipe.fit_transform(qubits)
    direct = CoherenceTransformer(("l1",)).fit_transform(qubits)
    np.testing.assert_allclose(out, 0.5 * direct, atol=1e-12)
    twin = clone(pipe)
    assert twin.get_params()["channeltransformer__p"] == 0.5


def test_invalid_states_rejected():
    bad = np.array([np.diag([0.6, 0.6])])
    with pytest.raises(InvalidState):
        CoherenceTransformer().fit(bad)


def test_ordering_analyzer(qubits, rng):
    an = OrderingAnalyzer(measures=("l1", "rel", "tsallis:2")).fit(qubits)
    assert an.report_.consistent and an.score() == 1.0
    pure = np.array(StateFamily.random_pure(3, 40, rng).states)
    assert OrderingAnalyzer(measures=("l1", "rel")).score(pure) < 1.0

# Copyright 2026 The bellsim Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import bellsim

DEG = math.pi / 180.0


def test_probabilities_match_closed_form():
    cfg = bellsim.ExperimentConfig(alpha=0.0, beta=30 * DEG)
    probs = bellsim.run(cfg).probabilities
    assert probs["++"] == pytest.approx(0.375, abs=1e-10)
    assert probs["+-"] == pytest.approx(0.125, abs=1e-10)
    assert probs["-+"] == pytest.approx(0.125, abs=1e-10)
    assert probs["--"] == pytest.approx(0.375, abs=1e-10)
    closed = bellsim.closed_form_probabilities(0.0, 30 * DEG)
    assert closed["++"] == pytest.approx(0.375, abs=1e-15)


def test_methods_agree():
    cfg = bellsim.ExperimentConfig(alpha=0.4, beta=1.3, sites=5, coupling=2.0)
    h_a, h_b = bellsim.hamiltonians(cfg)
    psi = bellsim.initial_state(cfg)
    exact = bellsim.evolve_exact(cfg, h_a + h_b, psi)
    factorized = bellsim.evolve_factorized(cfg, h_a, h_b, psi)
    branch = bellsim.evolve_branch(cfg, psi)
    assert np.max(np.abs(exact - factorized)) <= 1e-10
    assert np.max(np.abs(exact - branch)) <= 1e-10
    assert bellsim.commutator_norm(h_a, h_b) <= 1e-10
    assert bellsim.factorization_gap(cfg, h_a, h_b) <= 1e-9


def test_pointer_density_is_diagonal():
    cfg = bellsim.ExperimentConfig(alpha=0.2, beta=0.9)
    rho = bellsim.run(cfg, bellsim.EvolutionMethod.branch).pointer_density
    assert rho.shape == (9, 9)
    assert bellsim.max_off_diagonal(rho) <= 1e-10


def test_nonlocal_coupling_breaks_factorization():
    cfg = bellsim.ExperimentConfig(alpha=0.0, beta=45 * DEG)
    h_a, h_b = bellsim.hamiltonians(cfg, mu=1.0)
    assert bellsim.commutator_norm(h_a, h_b) > 1e-2
    assert bellsim.factorization_gap(cfg, h_a, h_b) > 1e-2
    state_gap, prob_gap = bellsim.order_swap_gap(cfg, h_a, h_b)
    assert state_gap > 1e-2 and prob_gap > 1e-3


def test_chsh_reaches_two_root_two():
    cfg = bellsim.ExperimentConfig()
    s, correlations = bellsim.chsh(cfg, [0.0, 45 * DEG, 22.5 * DEG, 67.5 * DEG])
    assert s == pytest.approx(2 * math.sqrt(2), abs=1e-6)
    assert len(correlations) == 4


def test_no_signaling():
    cfg = bellsim.ExperimentConfig()
    assert bellsim.no_signaling_max_deviation(cfg, resolution=6) <= 1e-10


def test_sampling_is_seeded():
    cfg = bellsim.ExperimentConfig(alpha=0.0, beta=30 * DEG)
    a = bellsim.sample(cfg, 20000, seed=5)
    b = bellsim.sample(cfg, 20000, seed=5)
    assert a["outcomes"] == b["outcomes"]
    assert sum(a["counts"].values()) == 20000
    assert a["dof"] == 3
    assert a["critical_99"] == pytest.approx(11.344866730144373)


def test_linear_algebra_helpers():
    z = np.diag([1.0, -1.0]).astype(complex)
    u = bellsim.expm_hermitian(z, math.pi)
    assert np.allclose(u, -np.eye(2), atol=1e-12)
    k = bellsim.kron(np.eye(2, dtype=complex), z)
    assert k.shape == (4, 4)
    rho = np.kron(np.diag([0.25, 0.75]), np.diag([0.5, 0.5])).astype(complex)
    reduced = bellsim.partial_trace(rho, [("a", 2), ("b", 2)], {"a"})
    assert np.allclose(reduced, np.diag([0.25, 0.75]))


def test_invalid_config_raises():
    with pytest.raises(bellsim.ConfigError):
        bellsim.ExperimentConfig(sites=2)
    with pytest.raises(ValueError):
        bellsim.ExperimentConfig(coupling=1.5)

import json
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsetcert.counting import AS_WRITTEN, CORRECTED, Instance, RSampling, brute_force_counts
from subsetcert.errors import CertificateFormatError, InputError, PreconditionError
from subsetcert.primes import pick_p, pick_q
from subsetcert.protocol import (Certificate, VerifierParams, compressed_row, draw_params,
                                 prove, tamper, verify)

from conftest import enumerate_subset_sums

instances = st.builds(
    lambda t, ws: Instance(tuple(min(w, t) for w in ws), t),
    st.integers(1, 40), st.lists(st.integers(1, 40), min_size=1, max_size=12))


def test_prove_example1(example1):
    cert = prove(example1)
    assert cert.p == 17
    assert cert.entries == ((0, 1), (17, 0), (34, 0), (51, 0), (68, 0))
    assert prove(Instance((1,), 1)) == Certificate(3, 1, ((1, 1),))


def test_prove_rejects_weight_above_t():
    with pytest.raises(PreconditionError):
        prove(Instance((5, 1), 3))


def test_compressed_row_examples(example1):
    row = compressed_row(example1, 17, 7, 277)
    assert [int(x) for x in row[:5]] == [1, 7, 49, 132, 93]
    assert [int(x) for x in compressed_row(Instance((1,), 1), 3, 1, 5)] == [1, 1, 0]


def test_verify_example1(example1):
    cert = prove(example1)
    v = verify(example1, cert, VerifierParams(277, 7))
    assert (v.accepted, v.c_t, v.lhs, v.rhs) == (True, 0, 1, 1)
    v = verify(example1, tamper(cert, 17, 1), VerifierParams(277, 7))
    assert (v.accepted, v.lhs, v.rhs) == (False, 90, 1)
    assert v.outcome == "Reject"


def test_verify_single_item_any_r():
    inst = Instance((1,), 1)
    cert = Certificate(3, 1, ((1, 1),))
    for r in (1, 2):
        v = verify(inst, cert, VerifierParams(3, r))
        assert v.accepted and v.c_t == 1 and v.lhs == v.rhs == r


def test_tamper_examples(example1):
    cert = prove(example1)
    assert tamper(cert, 17, 1).count_at(17) == 1
    assert tamper(cert, 0, -1).count_at(0) == 0
    with pytest.raises(InputError):
        tamper(cert, 5, 1)
    with pytest.raises(InputError):
        tamper(cert, 17, -1)


def test_malformed_certificates_are_not_rejections(example1):
    params = VerifierParams(277, 7)
    cert = prove(example1)
    missing_zero = Certificate(17, 17, cert.entries[1:])
    with pytest.raises(CertificateFormatError):
        verify(example1, missing_zero, params)
    with pytest.raises(CertificateFormatError):
        verify(example1, Certificate(19, 17, cert.entries), params)
    with pytest.raises(CertificateFormatError):
        verify(example1, Certificate(17, 16, cert.entries), params)
    with pytest.raises(CertificateFormatError):
        Certificate.from_dict({"p": 17, "t": 17, "entries": [{"i": 0, "c": "01"}]})
    with pytest.raises(CertificateFormatError):
        Certificate.from_dict({"p": 17, "t": 17, "entries": [{"i": 0, "c": "1"}, {"i": 0, "c": "1"}]})


def test_params_validation(example1):
    cert = prove(example1)
    assert verify(example1, cert, VerifierParams(281, 7)).accepted
    for bad_q in (279, 547, 271):  # composite, above 2**5 * 17, below 2**4 * 17
        with pytest.raises(PreconditionError):
            verify(example1, cert, VerifierParams(bad_q, 7))
    with pytest.raises(PreconditionError):
        verify(example1, cert, VerifierParams(277, 0))
    with pytest.raises(PreconditionError):
        verify(example1, cert, VerifierParams(277, 277))
    include_zero = replace(CORRECTED, r_sampling=RSampling.INCLUDE_ZERO)
    v = verify(example1, cert, VerifierParams(277, 0), include_zero)
    assert v.accepted and v.lhs == 1  # 0**0 == 1 keeps the i = 0 entry


def test_certificate_json_is_canonical(example1):
    cert = prove(example1)
    text = cert.to_json()
    assert text == ('{"p":17,"t":17,"entries":[{"i":0,"c":"1"},{"i":17,"c":"0"},'
                    '{"i":34,"c":"0"},{"i":51,"c":"0"},{"i":68,"c":"0"}]}')
    assert Certificate.from_dict(json.loads(text)) == cert
    shuffled = Certificate(17, 17, tuple(reversed(cert.entries)))
    assert shuffled.to_json() == text


def test_params_json_round_trip():
    params = draw_params(4, 17, seed=5)
    data = params.to_dict()
    assert set(data) == {"q", "r", "q_mode", "seed"} and data["q"] == "277"
    assert VerifierParams.from_dict(data) == params
    assert draw_params(4, 17, q_mode="random", seed=5) == draw_params(4, 17, q_mode="random", seed=5)


@settings(max_examples=60, deadline=None)
@given(instances, st.integers(0, 2**32))
def test_completeness(inst, seed):
    cert = prove(inst)
    params = draw_params(inst.n, inst.t, seed=seed)
    v = verify(inst, cert, params)
    assert v.accepted
    assert v.c_t == brute_force_counts(inst)[inst.t]


@settings(max_examples=60, deadline=None)
@given(instances, st.integers(0, 2**32))
def test_as_written_protocol_is_self_consistent(inst, seed):
    cert = prove(inst, AS_WRITTEN)
    assert verify(inst, cert, draw_params(inst.n, inst.t, AS_WRITTEN, seed=seed), AS_WRITTEN).accepted


@settings(max_examples=60, deadline=None)
@given(instances, st.integers(1, 10**6))
def test_fingerprint_and_generating_function_identities(inst, r_raw):
    p = pick_p(inst.n, inst.t).prime
    q = pick_q(inst.n, inst.t).prime
    r = r_raw % q
    row = [int(x) for x in compressed_row(inst, p, r, q)]
    counts = brute_force_counts(inst).tolist()
    for s in range(p):
        assert row[s] == sum(counts[i] * pow(r, i, q) for i in range(s, inst.nt + 1, p)) % q
    prod = 1
    for w in inst.weights:
        prod = prod * (1 + pow(r, w, q)) % q
    assert sum(row) % q == prod


@settings(max_examples=80, deadline=None)
@given(instances, st.data())
def test_single_tamper_always_rejected(inst, data):
    cert = prove(inst)
    q = pick_q(inst.n, inst.t).prime
    r = data.draw(st.integers(1, q - 1))
    index = data.draw(st.sampled_from(cert.indices))
    count = cert.count_at(index)
    delta = data.draw(st.integers(-min(count, q - 1), q - 1).filter(lambda d: d != 0))
    assert not verify(inst, tamper(cert, index, delta), VerifierParams(q, r)).accepted


def test_certificate_size_formula():
    rng = random.Random(0)
    for _ in range(50):
        n, t = rng.randint(1, 20), rng.randint(1, 300)
        inst = Instance(tuple(rng.randint(1, t) for _ in range(n)), t)
        cert = prove(inst)
        nt, p = inst.nt, cert.p
        assert len(cert.entries) == (nt - t % p) // p + 1
        assert t in cert.indices

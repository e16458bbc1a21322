import json

import pytest

from semigalois.errors import InputError
from semigalois.problem import ProblemSpec, load_problem, spec_from_json, spec_to_json

from _util import annulus, reducible_example, s3_example, spec


def test_exact_round_trip():
    for f in (reducible_example(), s3_example()):
        d = json.loads(json.dumps(spec_to_json(f)))
        g = spec_from_json(d)
        assert g.kind == "exact"
        assert [p.coeffs for p in g.coeffs] == [p.coeffs for p in f.coeffs]
        assert g.domain.to_json() == f.domain.to_json()


def test_float_round_trip():
    f = spec([[0.25, -1.5], []], annulus(), kind="float")
    d = json.loads(json.dumps(spec_to_json(f)))
    assert d["polynomial"]["coefficients"][0][1] == [-1.5, 0.0]
    g = spec_from_json(d)
    assert g.kind == "float"
    assert (g.coeff_matrix == f.coeff_matrix).all()


def test_gaussian_strings_parse():
    d = spec_to_json(s3_example())
    d["polynomial"]["coefficients"][0] = ["1/2+i", "-3/4 i"]
    g = spec_from_json(d)
    assert g.coeffs[0].as_array()[0] == pytest.approx(0.5 + 1j)
    assert g.coeffs[0].as_array()[1] == pytest.approx(-0.75j)


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(extra=1),
    lambda d: d["polynomial"].update(degree=7),
    lambda d: d["polynomial"].update(coefficients="z^2"),
    lambda d: d.update(caps={"order": 0}),
    lambda d: d.update(caps={"bogus": 3}),
    lambda d: d["domain"].pop("outer"),
])
def test_malformed_specs_rejected(mutate):
    d = spec_to_json(s3_example())
    mutate(d)
    with pytest.raises(InputError):
        ProblemSpec.from_json(d)


def test_caps_default_and_override(tmp_path):
    d = spec_to_json(s3_example())
    d["caps"] = {"order": 10}
    p = tmp_path / "s.json"
    p.write_text(json.dumps(d))
    prob = load_problem(str(p))
    assert prob.order_cap == 10 and prob.lattice_cap > 0
    assert ProblemSpec.from_json(prob.to_json()).caps == prob.caps


def test_load_problem_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InputError):
        load_problem(str(p))

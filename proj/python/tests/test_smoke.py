import pytest

import sigma3


def test_family_report():
    r = sigma3.report(family="bifurcation", e=3)
    assert r["lo"] == 9
    assert r["commutator_quotient"] == "31"
    assert list(r)[0] == "subject"
    assert r["provenance"]["version"] == sigma3.__version__


def test_pq_of_abelian_group():
    pcp = sigma3.pq("gens x,y; rel x^9, y^3, [y,x];")
    r = sigma3.report(pcp=pcp)
    assert r["lo"] == 3
    assert r["kappa"]["raw"] == "(000;0)"
    assert r["sigma"] and not r["schur"]


def test_path_and_descendants():
    assert sigma3.normalize_path("<9,2>−#1;1") == sigma3.normalize_path("⟨9,2⟩-#1;1")
    r = sigma3.report(path="<9,2>", steps=[1])
    assert r["descendants"][0]["N"] == 3


def test_suites():
    assert "bifurcation-orders" in sigma3.suite_names()
    assert sigma3.run_suite("bifurcation-orders")["status"] == "PASS"
    assert sigma3.run_suite("elevated-census-stretch")["status"] == "CAP"


def test_errors():
    with pytest.raises(ValueError):
        sigma3.report()
    with pytest.raises(sigma3.ResourceCapExceeded):
        sigma3.report(family="bifurcation", e=3, steps=[3], max_order_exp=10)

import pytest

import hurwitz


def test_orbit_counts_start_with_the_empty_tuple():
    counts = hurwitz.orbit_counts("S3", "(1 2)", 4)
    assert len(counts) == 5
    assert counts[0] == 1


def test_betti_s3():
    # b_0 counts every component, generating or not
    assert hurwitz.betti("S3", "(1 2)", 2) == (hurwitz.orbit_counts("S3", "(1 2)", 2)[2], 5)
    assert hurwitz.betti("S3", "(1 2)", 3)[1] == 9


def test_stabilizer_for_s3():
    assert hurwitz.stabilizer_degree("S3", "(1 2)") == 1


def test_group_counts_are_python_ints():
    assert hurwitz.aut_order(3, "Z/3 x Z/3") == 48
    assert hurwitz.sur_count(3, "Z/3 x Z/3", "Z/3") == 8
    value, err = hurwitz.mu_mass(3, "1")
    assert abs(value - 0.560126) < 1e-5 and err >= 0


def test_symplectic_orbit():
    r = hurwitz.symplectic_orbits(2, 3, 1, "Z/3", 2)
    assert r["sp_order"] == 51840
    assert r["orbits"] == 1 and r["transitive"]


def test_elliptic_class_number():
    # y^2 = x^3 + x over F_5 has four rational points
    assert hurwitz.class_number(5, [0, 1, 0, 1]) == 4
    assert hurwitz.zeta_numerator(5, [0, 1, 0, 1]) == [1, -2, 5]


def test_run_experiment_dict_and_validation():
    rep = hurwitz.run_experiment({"kind": "orbits", "group": "S3", "class": "(1 2)", "n_max": 3})
    assert rep["kind"] == "orbits"
    with pytest.raises(ValueError):
        hurwitz.run_experiment("kind = cl-sample\nl = 3\nN = 4\n")
    with pytest.raises(ValueError):
        hurwitz.class_number(6, [0, 1, 0, 1])

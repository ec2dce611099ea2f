import dataclasses
import math

import pytest

from qcaudit.constants import PhysicalConstants, default_constants, fingerprint, load_overrides
from qcaudit.errors import ConfigurationError, ValidationError


def test_defaults():
    c = default_constants()
    assert c.r_SJ == 7.88e11
    assert c.h / c.hbar == pytest.approx(2 * math.pi, rel=1e-12)
    for f in dataclasses.fields(c):
        assert getattr(c, f.name) > 0


def test_jupiter_coupling_energy():
    c = default_constants()
    # 6.674e-11 * 5.972e24 * 1.898e27 / 7.88e11 by hand
    assert c.G * c.M_earth * c.M_jupiter / c.r_SJ == pytest.approx(9.6e29, rel=1e-3)


def test_override_passthrough(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("# comment\nM_earth=5.98e24\n\n")
    c = load_overrides(p)
    assert c.M_earth == 5.98e24
    assert c.M_sun == default_constants().M_sun


def test_empty_override_is_default(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("")
    assert load_overrides(p) == default_constants()


@pytest.mark.parametrize("text", ["bogus=1", "G=-1", "G=0", "G=abc", "novalue"])
def test_override_rejects(tmp_path, text):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(ValidationError):
        load_overrides(p)


def test_override_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_overrides(tmp_path / "nope.txt")


def test_hbar_override_keeps_h_consistent(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("hbar=1.0\n")
    c = load_overrides(p)
    assert c.h == pytest.approx(2 * math.pi)


def test_inconsistent_h_rejected():
    with pytest.raises(ValidationError):
        PhysicalConstants(h=1.0)


def test_fingerprint_stable_and_sensitive():
    a = fingerprint(default_constants())
    assert a == fingerprint(default_constants())
    assert a != fingerprint(dataclasses.replace(default_constants(), M_sun=2e30))

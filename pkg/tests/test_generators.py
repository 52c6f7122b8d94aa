import json

import pytest

from arl.errors import InvalidGeneratorSpecError, ModulusTooSmallError
from arl.generators import generate_instance, parse_generator_spec
from arl.group import IndexedTripleFamily, Modulus
from arl.triangles import count_triangles_naive


def test_full():
    s = generate_instance("full", 5)
    assert s.sizes() == (5, 5, 5)
    assert count_triangles_naive(s) == 25


def test_random_density_deterministic():
    a = generate_instance("random_density:beta=0.05", 10007, seed=3)
    b = generate_instance("random_density:beta=0.05", 10007, seed=3)
    assert a == b
    c = generate_instance("random_density:beta=0.05", 10007, seed=4)
    assert a != c


def test_random_density_extremes():
    assert generate_instance("random_density:beta=0", 50, seed=1).sizes() == (0, 0, 0)
    assert generate_instance("random_density:beta=1", 50, seed=1).sizes() == (50, 50, 50)


def test_progression_generator():
    s = generate_instance("progression:d=2,digits=2", 10, seed=0)
    assert count_triangles_naive(s) == 2  # diagonal triangles only
    with pytest.raises(ModulusTooSmallError):
        generate_instance("progression:d=2,digits=2", 9, seed=0)


def test_matching_embed_from_file(tmp_path):
    fam = IndexedTripleFamily(Modulus(5), ((0, 0, 0), (1, 3, 1)))
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(fam.to_json_dict()))
    s = generate_instance(f"matching_embed:file={path}", 5, seed=0)
    assert count_triangles_naive(s) == 2
    with pytest.raises(InvalidGeneratorSpecError):
        generate_instance(f"matching_embed:file={path}", 7, seed=0)


def test_spec_parsing_errors():
    with pytest.raises(InvalidGeneratorSpecError):
        parse_generator_spec("nonsense:beta=1")
    with pytest.raises(InvalidGeneratorSpecError):
        parse_generator_spec("random_density:beta")
    with pytest.raises(InvalidGeneratorSpecError):
        generate_instance("random_density:beta=2", 10, seed=0)
    with pytest.raises(InvalidGeneratorSpecError):
        generate_instance("matching_embed", 10, seed=0)

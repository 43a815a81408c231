"""Synthetic scene rendering and ground truth."""

import numpy as np
import pytest

from minescan.roi import Rect
from minescan.scenes import (Occluder, SceneObject, SceneSpec, SceneSpecError,
                             gen_synthetic_scene, paper_suite_specs,
                             three_blob_scene, write_truth)


def _disc(cx=32, cy=32, **kw):
    base = dict(class_index=0, shape="disc", cx=cx, cy=cy, radius=28.5,
                body_rgb=(220, 90, 20), mark_rgb=(220, 50, 120))
    return SceneObject(**(base | kw))


def _square(cx=32, cy=32, **kw):
    base = dict(class_index=1, shape="square", cx=cx, cy=cy, radius=28.0,
                body_rgb=(50, 130, 220), mark_rgb=(180, 150, 110))
    return SceneObject(**(base | kw))


def test_deterministic_given_seed():
    spec = SceneSpec(64, 64, (_disc(),), noise_amplitude=5)
    a = gen_synthetic_scene(spec, rng_seed=3)
    b = gen_synthetic_scene(spec, rng_seed=3)
    c = gen_synthetic_scene(spec, rng_seed=4)
    assert np.array_equal(a.image, b.image)
    assert not np.array_equal(a.image, c.image)


def test_disc_truth_rect_and_labels():
    r = gen_synthetic_scene(SceneSpec(64, 64, (_disc(),)))
    assert r.objects[0].rect == Rect(4, 4, 60, 60)
    assert r.objects[0].class_index == 0
    assert r.objects[0].transform == "none"
    # noise-free: labels are exactly the lit pixels
    lit = r.image.any(axis=2)
    assert np.array_equal(r.label_map > 0, lit)


def test_square_truth_rect():
    r = gen_synthetic_scene(SceneSpec(64, 64, (_square(),)))
    assert r.objects[0].rect == Rect(4, 4, 60, 60)
    inside = r.label_map == 1
    assert int(inside.sum()) == 57 * 57


def test_marks_are_two_tone():
    r = gen_synthetic_scene(SceneSpec(64, 64, (_disc(),)))
    colors = {tuple(px) for px in r.image[r.label_map == 1]}
    assert colors == {(220, 90, 20), (220, 50, 120)}


def test_no_marks_when_mark_rgb_none():
    r = gen_synthetic_scene(SceneSpec(64, 64, (_disc(mark_rgb=None),)))
    colors = {tuple(px) for px in r.image[r.label_map == 1]}
    assert colors == {(220, 90, 20)}


def test_pattern_moves_with_object():
    """An integer displacement renders the same pixels elsewhere."""
    a = gen_synthetic_scene(SceneSpec(80, 80, (_disc(30, 32),)))
    b = gen_synthetic_scene(SceneSpec(80, 80, (_disc(47, 41),)))
    ra, rb = a.objects[0].rect, b.objects[0].rect
    pa = a.image[ra.y1:ra.y2 + 1, ra.x1:ra.x2 + 1]
    pb = b.image[rb.y1:rb.y2 + 1, rb.x1:rb.x2 + 1]
    assert np.array_equal(pa, pb)


def test_striped_disc_rotation_turns_stripes_only():
    kw = dict(shape="striped-disc", radius=28.5)
    plain = gen_synthetic_scene(SceneSpec(64, 64, (_square(32, 32, **kw),)))
    rot = gen_synthetic_scene(SceneSpec(64, 64, (_square(32, 32, rotation=45.0, **kw),)))
    assert plain.objects[0].rect == rot.objects[0].rect == Rect(4, 4, 60, 60)
    assert np.array_equal(plain.label_map, rot.label_map)
    assert not np.array_equal(plain.image, rot.image)
    assert rot.objects[0].transform == "rotated:45"


def test_rotated_square_grows_and_is_tagged():
    plain = gen_synthetic_scene(SceneSpec(120, 120, (_square(60, 60),)))
    rot = gen_synthetic_scene(SceneSpec(120, 120, (_square(60, 60, rotation=45.0),)))
    rp, rr = plain.objects[0].rect, rot.objects[0].rect
    assert rr.x2 - rr.x1 > rp.x2 - rp.x1
    assert rot.objects[0].transform == "rotated:45"
    assert int((rot.label_map == 1).sum()) == pytest.approx(57 * 57, rel=0.05)


def test_overlap_rejected():
    spec = SceneSpec(64, 64, (_disc(30, 30), _square(40, 40)))
    with pytest.raises(SceneSpecError, match="overlaps"):
        gen_synthetic_scene(spec)


def test_unknown_shape_rejected():
    with pytest.raises(SceneSpecError, match="shape"):
        gen_synthetic_scene(SceneSpec(64, 64, (_disc(shape="hex"),)))


def test_object_outside_rejected():
    with pytest.raises(SceneSpecError, match="outside"):
        gen_synthetic_scene(SceneSpec(64, 64, (_disc(500, 500),)))


def test_noise_is_bounded():
    spec0 = SceneSpec(64, 64, (_disc(),))
    clean = gen_synthetic_scene(spec0).image.astype(int)
    spec = SceneSpec(64, 64, (_disc(),), noise_amplitude=4)
    noisy = gen_synthetic_scene(spec, rng_seed=9).image.astype(int)
    assert np.abs(noisy - clean).max() <= 4


def test_occluder_covers_and_clears_labels():
    spec = SceneSpec(120, 120, (_disc(30, 30), _square(88, 88)),
                     occluder=Occluder(object_index=0, fraction=0.30))
    bare = gen_synthetic_scene(SceneSpec(120, 120, (_disc(30, 30), _square(88, 88))))
    r = gen_synthetic_scene(spec)
    total = int((bare.label_map == 1).sum())
    left = int((r.label_map == 1).sum())
    covered = 1 - left / total
    assert 0.30 <= covered < 0.45
    note = r.objects[0].transform
    assert note.startswith("covered:0.3")
    assert float(note.split(":")[1]) == pytest.approx(covered, abs=0.01)
    # the square keeps its truth untouched
    assert r.objects[1].transform == "none"
    assert np.array_equal(r.label_map == 2, bare.label_map == 2)


def test_occluder_band_is_solid_strip():
    spec = SceneSpec(64, 64, (_disc(),),
                     occluder=Occluder(object_index=0, fraction=0.25, rgb=(9, 9, 9)))
    r = gen_synthetic_scene(spec)
    strip_rows = np.nonzero((r.image == (9, 9, 9)).all(axis=2).any(axis=1))[0]
    assert len(strip_rows) > 0
    assert np.array_equal(strip_rows, np.arange(strip_rows[0], strip_rows[-1] + 1))


def test_occluder_bad_index():
    spec = SceneSpec(64, 64, (_disc(),),
                     occluder=Occluder(object_index=3, fraction=0.2))
    with pytest.raises(SceneSpecError):
        gen_synthetic_scene(spec)


def test_write_truth_format(tmp_path):
    r = gen_synthetic_scene(SceneSpec(64, 64, (_disc(),)))
    path = tmp_path / "t.txt"
    write_truth(path, r)
    assert path.read_text() == "0\t4 4 60 60\tnone\n"


def test_three_blob_scene_layout():
    for seed in range(10):
        r = three_blob_scene(seed)
        assert sorted(np.unique(r.label_map)) == [0, 1, 2, 3]
        # solid blobs, one color each
        for i, rgb in enumerate([(230, 40, 40), (40, 230, 40), (40, 40, 230)]):
            px = r.image[r.label_map == i + 1]
            assert (px == rgb).all()


def test_suite_specs_shape():
    train, evals = paper_suite_specs()
    assert len(train) == 16
    assert {cls for _, _, _, cls in train} == {"VS-50", "TMI-42"}
    assert [name for name, _, _ in evals] == [
        "eval_two_object", "eval_displaced", "eval_rotated", "eval_covered"]
    seeds = [s for _, _, s, _ in train] + [s for _, _, s in evals]
    assert len(set(seeds)) == len(seeds)

import io
import json

import pytest

from digifix import (box, cube, cycle, disjoint_union, fig_sexample,
                     fig_xexample, interval, load_image, load_map, product,
                     save_image, save_map, wedge, wedge_cycles_8)
from digifix.cli import run_command
from digifix.errors import ImageFormatError
from digifix.io import image_from_dict, image_to_dict, map_to_dict
from digifix.selfmap import cycle_map, identity_map


PRESETS = [interval(0, 4), cycle(7), box(3, 2, 2), cube(), wedge_cycles_8(),
           fig_xexample(), fig_sexample(),
           product([interval(0, 1), cycle(4)], 2),
           wedge(cycle(6), cycle(6), 0, 0),
           disjoint_union(cycle(3), interval(0, 1))]


@pytest.mark.parametrize("image", PRESETS, ids=lambda im: im.name)
def test_image_round_trip(image, tmp_path):
    path = tmp_path / "img.json"
    save_image(image, path)
    back = load_image(path)
    assert back.name == image.name
    assert back.adj == image.adj
    assert back.points == image.points
    assert type(back.spec).__name__ == type(image.spec).__name__ or image.spec is None


def test_round_trip_is_byte_stable(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_image(fig_sexample(), p1)
    save_image(load_image(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_map_round_trip(tmp_path):
    c7 = cycle(7)
    m = cycle_map(7, "flip", 3, image=c7)
    path = tmp_path / "map.json"
    save_map(m, path)
    back = load_map(path, c7)
    assert back.targets == m.targets


def test_map_dict_shape():
    d = map_to_dict(identity_map(cycle(3)))
    assert d == {"format": "digifix-map/1", "targets": [0, 1, 2]}


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ImageFormatError, match="line"):
        load_image(bad)
    bad.write_text(json.dumps({"format": "other/1"}))
    with pytest.raises(ImageFormatError, match="format"):
        load_image(bad)
    bad.write_text(json.dumps({
        "format": "digifix-image/1", "name": "x", "dimension": 0,
        "adjacency": {"kind": "mystery"}}))
    with pytest.raises(ImageFormatError, match="kind"):
        load_image(bad)
    bad.write_text(json.dumps({
        "format": "digifix-image/1", "name": "x", "dimension": 0, "size": 3,
        "adjacency": {"kind": "explicit", "edges": [[0, 0]]}}))
    with pytest.raises(ImageFormatError, match="self-loop"):
        load_image(bad)
    bad.write_text(json.dumps({
        "format": "digifix-image/1", "name": "x", "dimension": 1,
        "points": [[0], [0]], "adjacency": {"kind": "cu", "u": 1}}))
    with pytest.raises(ImageFormatError, match="duplicate"):
        load_image(bad)


def test_dimension_mismatch_rejected():
    d = image_to_dict(cube())
    d["dimension"] = 2
    with pytest.raises(ImageFormatError, match="dimension"):
        image_from_dict(d)


def _run(argv):
    buf = io.BytesIO()
    code = run_command(argv, stdout=buf)
    return code, buf.getvalue()


def test_cli_gen_and_spectrum(tmp_path):
    out = tmp_path / "c7.json"
    code, _ = _run(["gen", "cycle", "7", "-o", str(out)])
    assert code == 0 and out.exists()
    code, payload = _run(["spectrum", str(out)])
    assert code == 0
    report = json.loads(payload)
    assert report["result"]["spectrum"] == [0, 1, 2, 3, 4, 7]
    assert report["command"] == "spectrum"
    assert report["stats"]["maps_enumerated"] <= report["stats"]["nodes_visited"]


def test_cli_sfix_and_fixset(tmp_path):
    img_path = tmp_path / "c6.json"
    _run(["gen", "cycle", "6", "-o", str(img_path)])
    map_path = tmp_path / "flip.json"
    save_map(cycle_map(6, "flip", 0), map_path)
    code, payload = _run(["sfix", str(img_path), "--map", str(map_path)])
    assert code == 0
    assert json.loads(payload)["result"]["spectrum"] == [0, 2]
    code, payload = _run(["fixset", str(img_path), "--map", str(map_path)])
    assert code == 0
    result = json.loads(payload)["result"]
    assert result["kind"] == "disconnected" and result["cycle_antipodal"] is True


def test_cli_rigid_pull_classes_lasso_criterion(tmp_path):
    fx = tmp_path / "fx.json"
    _run(["gen", "fig_xexample", "-o", str(fx)])
    code, payload = _run(["rigid", str(fx)])
    assert code == 0 and json.loads(payload)["result"]["rigid"] is True
    iv = tmp_path / "iv.json"
    _run(["gen", "interval", "1", "3", "-o", str(iv)])
    code, payload = _run(["pull", str(iv)])
    assert json.loads(payload)["result"]["pull_indices"] == [1, 2, 1]
    code, payload = _run(["pull", str(iv), "--point", "1"])
    assert json.loads(payload)["result"]["pull_index"] == 2
    c5 = tmp_path / "c5.json"
    _run(["gen", "cycle", "5", "-o", str(c5)])
    code, payload = _run(["classes", str(c5)])
    assert json.loads(payload)["result"]["count"] == 3
    code, payload = _run(["criterion", str(c5)])
    assert json.loads(payload)["result"]["witness"] is None
    code, payload = _run(["lasso", str(fx)])
    assert json.loads(payload)["result"]["certified"] is True


def test_cli_retract(tmp_path):
    b = tmp_path / "box.json"
    _run(["gen", "box", "2", "2", "1", "-o", str(b)])
    code, payload = _run(["retract", str(b), "--subset", "0,1"])
    assert code == 0 and json.loads(payload)["result"]["found"] is True


def test_cli_exit_codes(tmp_path):
    code, _ = _run(["gen", "cycle", "-o", str(tmp_path / "x.json")])
    assert code == 1  # missing parameter: usage
    code, _ = _run(["spectrum", str(tmp_path / "missing.json")])
    assert code == 2  # unreadable input
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    code, _ = _run(["spectrum", str(bad)])
    assert code == 2
    img = tmp_path / "fs.json"
    _run(["gen", "fig_sexample", "-o", str(img)])
    code, _ = _run(["spectrum", str(img), "--budget", "10"])
    assert code == 3  # resource budget exceeded
    code, _ = _run(["gen", "interval", "5", "1", "-o", str(tmp_path / "y.json")])
    assert code == 2  # invalid parameters


def test_cli_formats(tmp_path):
    img = tmp_path / "c4.json"
    _run(["gen", "cycle", "4", "-o", str(img)])
    code, payload = _run(["spectrum", str(img), "--format", "csv"])
    assert code == 0
    lines = payload.decode().splitlines()
    assert lines[0] == "field,value"
    assert "spectrum,0" in lines and "spectrum,4" in lines
    code, payload = _run(["spectrum", str(img), "--format", "text"])
    assert code == 0 and b"spectrum" in payload


def test_cli_reports_byte_stable(tmp_path):
    img = tmp_path / "c6.json"
    _run(["gen", "cycle", "6", "-o", str(img)])
    payloads = {_run(["spectrum", str(img), "--threads", t])[1]
                for t in ("1", "2", "4")}
    assert len(payloads) == 1
    again = _run(["spectrum", str(img), "--threads", "4"])[1]
    assert again in payloads

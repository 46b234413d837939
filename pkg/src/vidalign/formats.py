"""File formats: tracks, matrices, masks, paths, annotations, reports.

Every writer is canonical (fixed key order, repr float formatting, no
timestamps) and atomic (temp file + rename), so identical inputs always
produce byte-identical files and write -> read -> write is the identity.
Readers validate and raise FormatError with file/line context.
Layouts are documented in docs/FORMATS.md.
"""
from __future__ import annotations

import json
import math
import os
import struct
import tempfile

import numpy as np

from .align import AlignmentResult, validate_path
from .errors import FormatError, InputError, InvalidAnnotation, InvalidPath
from .features import N_KEYPOINTS, SubjectTrack
from .metrics import EvalReport, GroundTruthPath, PhaseAnnotation
from .series import FeatureSeries

MATRIX_MAGIC = b"TSMATRX1"
MASK_MAGIC = b"WMASK001"


# ---------------------------------------------------------------- helpers

def atomic_write_bytes(path, data: bytes) -> None:
    """Write via a temp file in the same directory, then rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def _fmt(x) -> str:
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def _parse_float(token: str, path, line) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FormatError(f"not a number: {token!r}", path, line) from None
    if not math.isfinite(value):
        raise FormatError(f"non-finite value: {token!r}", path, line)
    return value


def _json_line(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def read_lines(path) -> list[str]:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise FormatError(str(exc), path) from None
    return data.decode("utf-8").splitlines()


# ---------------------------------------------------------------- tracks

def write_track(path, track: SubjectTrack) -> None:
    """Line-delimited JSON, one record per frame: frame, box, pose."""
    lines = []
    for t in range(track.n_frames):
        box = track.boxes[t]
        pose = track.poses[t]
        rec = {
            "frame": t + 1,
            "box": None if np.isnan(box).any() else {
                "cx": float(box[0]), "cy": float(box[1]),
                "w": float(box[2]), "h": float(box[3])},
            "pose": None if np.isnan(pose).any() else
                    [[float(x), float(y)] for x, y in pose],
        }
        lines.append(_json_line(rec))
    atomic_write_text(path, "\n".join(lines) + "\n")


def _check_number(value, what, path, line, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{what} must be a number, got {value!r}", path, line)
    if not math.isfinite(value):
        raise FormatError(f"{what} must be finite, got {value!r}", path, line)
    if positive and value <= 0:
        raise FormatError(f"{what} must be positive, got {value!r}", path, line)
    return float(value)


def read_track(path) -> SubjectTrack:
    """Parse and validate a track file; frames must be contiguous from 1."""
    lines = read_lines(path)
    frames = []
    for idx, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", path, idx) from None
        if not isinstance(rec, dict) or set(rec) != {"frame", "box", "pose"}:
            raise FormatError("record must have exactly the keys "
                              "frame, box, pose", path, idx)
        if rec["frame"] != len(frames) + 1:
            raise FormatError(f"expected frame {len(frames) + 1}, "
                              f"got {rec['frame']!r}", path, idx)
        box = rec["box"]
        if box is not None:
            if not isinstance(box, dict) or set(box) != {"cx", "cy", "w", "h"}:
                raise FormatError("box must be null or have exactly the keys "
                                  "cx, cy, w, h", path, idx)
            box = np.array([_check_number(box["cx"], "box.cx", path, idx),
                            _check_number(box["cy"], "box.cy", path, idx),
                            _check_number(box["w"], "box.w", path, idx, positive=True),
                            _check_number(box["h"], "box.h", path, idx, positive=True)])
        pose = rec["pose"]
        if pose is not None:
            if (not isinstance(pose, list) or len(pose) != N_KEYPOINTS
                    or any(not isinstance(pt, list) or len(pt) != 2 for pt in pose)):
                raise FormatError(f"pose must be null or a list of {N_KEYPOINTS} "
                                  "[x, y] pairs", path, idx)
            pose = np.array([[_check_number(v, "pose coordinate", path, idx)
                              for v in pt] for pt in pose])
        frames.append((box, pose))
    if len(frames) < 2:
        raise FormatError(f"track needs at least 2 frames, got {len(frames)}", path)
    boxes = np.full((len(frames), 4), np.nan)
    poses = np.full((len(frames), N_KEYPOINTS, 2), np.nan)
    for t, (box, pose) in enumerate(frames):
        if box is not None:
            boxes[t] = box
        if pose is not None:
            poses[t] = pose
    return SubjectTrack(boxes, poses)


# ---------------------------------------------------------------- matrices

def write_matrix(path, values: np.ndarray, video_id: str = "") -> None:
    """Binary container: magic, T, D, id length, id bytes, float64 LE cells."""
    values = np.ascontiguousarray(values, dtype="<f8")
    vid = video_id.encode("utf-8")
    header = MATRIX_MAGIC + struct.pack("<III", values.shape[0],
                                        values.shape[1], len(vid))
    atomic_write_bytes(path, header + vid + values.tobytes())


def write_matrix_csv(path, values: np.ndarray, video_id: str = "") -> None:
    """Lossless text twin: one header comment, then repr floats per row."""
    if "\n" in video_id or "\r" in video_id:
        raise InputError("video id must not contain line breaks")
    values = np.asarray(values, dtype=np.float64)
    lines = [f"# matrix T={values.shape[0]} D={values.shape[1]} videoId={video_id}"]
    for row in values:
        lines.append(",".join(_fmt(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def _read_matrix_binary(path, data: bytes):
    if len(data) < 20:
        raise FormatError("truncated header", path)
    t, d, idlen = struct.unpack("<III", data[8:20])
    if len(data) != 20 + idlen + t * d * 8:
        raise FormatError(f"size mismatch: expected {20 + idlen + t * d * 8} "
                          f"bytes, got {len(data)}", path)
    try:
        video_id = data[20:20 + idlen].decode("utf-8")
    except UnicodeDecodeError:
        raise FormatError("video id is not valid UTF-8", path) from None
    values = np.frombuffer(data[20 + idlen:], dtype="<f8").reshape(t, d).copy()
    if not np.isfinite(values).all():
        raise FormatError("matrix contains non-finite values", path)
    return values, video_id


def _read_matrix_text(path, data: bytes):
    lines = data.decode("utf-8").splitlines()
    if not lines or not lines[0].startswith("# matrix "):
        raise FormatError("missing '# matrix' header", path, 1)
    header = lines[0][len("# matrix "):]
    try:
        t_part, d_part, id_part = header.split(" ", 2)
        t = int(t_part.removeprefix("T="))
        d = int(d_part.removeprefix("D="))
        video_id = id_part.removeprefix("videoId=")
        if not (t_part.startswith("T=") and d_part.startswith("D=")
                and id_part.startswith("videoId=")):
            raise ValueError
    except ValueError:
        raise FormatError(f"malformed header: {lines[0]!r}", path, 1) from None
    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) != t:
        raise FormatError(f"expected {t} rows, got {len(rows)}", path)
    values = np.empty((t, d))
    for r, line in enumerate(rows):
        cells = line.split(",")
        if len(cells) != d:
            raise FormatError(f"expected {d} columns, got {len(cells)}", path, r + 2)
        values[r] = [_parse_float(c, path, r + 2) for c in cells]
    return values, video_id


def read_matrix(path):
    """Read either container (sniffed by magic); returns (values, video_id)."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise FormatError(str(exc), path) from None
    if data[:8] == MATRIX_MAGIC:
        return _read_matrix_binary(path, data)
    return _read_matrix_text(path, data)


def write_series(path, series: FeatureSeries, fmt: str = "bin") -> None:
    if fmt == "bin":
        write_matrix(path, series.values, series.video_id)
    elif fmt == "csv":
        write_matrix_csv(path, series.values, series.video_id)
    else:
        raise InputError(f"unknown series format {fmt!r}, expected bin or csv")


def read_series(path) -> FeatureSeries:
    values, video_id = read_matrix(path)
    return FeatureSeries(values, video_id)


# ---------------------------------------------------------------- masks

def write_mask(path, values: np.ndarray) -> None:
    """16-byte header (magic, H, W), then float64 LE cells row-major."""
    values = np.ascontiguousarray(values, dtype="<f8")
    header = MASK_MAGIC + struct.pack("<II", values.shape[0], values.shape[1])
    atomic_write_bytes(path, header + values.tobytes())


def write_mask_text(path, values: np.ndarray) -> None:
    values = np.asarray(values, dtype=np.float64)
    lines = [f"# mask H={values.shape[0]} W={values.shape[1]}"]
    for row in values:
        lines.append(" ".join(_fmt(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_mask(path) -> np.ndarray:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise FormatError(str(exc), path) from None
    if data[:8] == MASK_MAGIC:
        if len(data) < 16:
            raise FormatError("truncated header", path)
        h, w = struct.unpack("<II", data[8:16])
        if len(data) != 16 + h * w * 8:
            raise FormatError(f"size mismatch: expected {16 + h * w * 8} bytes, "
                              f"got {len(data)}", path)
        values = np.frombuffer(data[16:], dtype="<f8").reshape(h, w).copy()
    else:
        lines = data.decode("utf-8").splitlines()
        if not lines or not lines[0].startswith("# mask "):
            raise FormatError("missing mask magic or '# mask' header", path, 1)
        try:
            h_part, w_part = lines[0][len("# mask "):].split(" ")
            h = int(h_part.removeprefix("H="))
            w = int(w_part.removeprefix("W="))
        except ValueError:
            raise FormatError(f"malformed header: {lines[0]!r}", path, 1) from None
        rows = [line for line in lines[1:] if line.strip()]
        if len(rows) != h:
            raise FormatError(f"expected {h} rows, got {len(rows)}", path)
        values = np.empty((h, w))
        for r, line in enumerate(rows):
            cells = line.split(" ")
            if len(cells) != w:
                raise FormatError(f"expected {w} columns, got {len(cells)}",
                                  path, r + 2)
            values[r] = [_parse_float(c, path, r + 2) for c in cells]
    if not np.isfinite(values).all():
        raise FormatError("mask contains non-finite values", path)
    return values


# ---------------------------------------------------------------- annotations

def write_annotations(path, annotations: list[PhaseAnnotation]) -> None:
    lines = [_json_line({"videoId": ann.video_id,
                         "phases": [int(p) for p in ann.phases]})
             for ann in annotations]
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_annotations(path) -> dict[str, PhaseAnnotation]:
    out: dict[str, PhaseAnnotation] = {}
    for idx, raw in enumerate(read_lines(path), start=1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", path, idx) from None
        if not isinstance(rec, dict) or set(rec) != {"videoId", "phases"}:
            raise FormatError("record must have exactly the keys "
                              "videoId, phases", path, idx)
        if not isinstance(rec["videoId"], str):
            raise FormatError("videoId must be a string", path, idx)
        phases = rec["phases"]
        if (not isinstance(phases, list)
                or any(isinstance(p, bool) or not isinstance(p, int) for p in phases)):
            raise FormatError("phases must be a list of integers", path, idx)
        if rec["videoId"] in out:
            raise FormatError(f"duplicate videoId {rec['videoId']!r}", path, idx)
        try:
            out[rec["videoId"]] = PhaseAnnotation(np.array(phases, dtype=np.int64),
                                                  rec["videoId"])
        except InvalidAnnotation as exc:
            raise FormatError(str(exc), path, idx) from None
    if not out:
        raise FormatError("no annotation records", path)
    return out


# ---------------------------------------------------------------- warp paths

def write_alignment(path, result: AlignmentResult) -> None:
    """Header comment with the configuration, then one 'i,j' line per point."""
    margin = "none" if result.margin is None else _fmt(result.margin)
    lam = "none" if result.lam is None else _fmt(result.lam)
    header = (f"# alignment n={result.n} k={result.k} method={result.method} "
              f"margin={margin} lambda={lam} total_cost={_fmt(result.total_cost)}")
    lines = [header] + [f"{i},{j}" for i, j in result.path]
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_alignment(path) -> AlignmentResult:
    lines = read_lines(path)
    if not lines or not lines[0].startswith("# alignment "):
        raise FormatError("missing '# alignment' header", path, 1)
    fields = {}
    for token in lines[0][len("# alignment "):].split(" "):
        if "=" not in token:
            raise FormatError(f"malformed header token {token!r}", path, 1)
        key, value = token.split("=", 1)
        fields[key] = value
    try:
        n = int(fields["n"])
        k = int(fields["k"])
        method = fields["method"]
        margin = None if fields["margin"] == "none" else \
            _parse_float(fields["margin"], path, 1)
        lam = None if fields["lambda"] == "none" else \
            _parse_float(fields["lambda"], path, 1)
        total = _parse_float(fields["total_cost"], path, 1)
    except KeyError as exc:
        raise FormatError(f"header missing {exc.args[0]}", path, 1) from None
    except ValueError:
        raise FormatError(f"malformed header: {lines[0]!r}", path, 1) from None
    points = []
    for idx, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split(",")
        if len(parts) != 2:
            raise FormatError(f"expected 'i,j', got {raw!r}", path, idx)
        try:
            points.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"expected integers, got {raw!r}", path, idx) from None
    try:
        warp = validate_path(np.array(points, dtype=np.int64).reshape(-1, 2), n, k)
    except InvalidPath as exc:
        raise FormatError(str(exc), path) from None
    return AlignmentResult(warp, total, method, n, k, margin=margin, lam=lam)


# ---------------------------------------------------------------- ground truth

def write_anchors(path, gt: GroundTruthPath,
                  video_a: str = "", video_b: str = "") -> None:
    payload = {
        "anchors": [[float(x), float(y)] for x, y in gt.anchors],
        "videoA": video_a,
        "videoB": video_b,
    }
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_anchors(path) -> tuple[GroundTruthPath, str, str]:
    try:
        with open(path, "rb") as fh:
            payload = json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise FormatError(str(exc), path) from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None
    if not isinstance(payload, dict) or "anchors" not in payload:
        raise FormatError("expected an object with an 'anchors' list", path)
    try:
        gt = GroundTruthPath(np.array(payload["anchors"], dtype=np.float64))
    except (InvalidAnnotation, ValueError) as exc:
        raise FormatError(str(exc), path) from None
    return gt, str(payload.get("videoA", "")), str(payload.get("videoB", ""))


# ---------------------------------------------------------------- reports

def write_report(path, report: EvalReport) -> None:
    payload = {
        "eae": report.eae,
        "correct_phase_rate": report.correct_phase_rate,
        "classification_accuracy": report.classification_accuracy,
        "config": report.config,
    }
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_report(path) -> EvalReport:
    try:
        with open(path, "rb") as fh:
            payload = json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise FormatError(str(exc), path) from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None
    if not isinstance(payload, dict):
        raise FormatError("report must be a JSON object", path)
    expected = {"eae", "correct_phase_rate", "classification_accuracy", "config"}
    if set(payload) != expected:
        raise FormatError(f"report must have exactly the keys {sorted(expected)}",
                          path)
    return EvalReport(eae=payload["eae"],
                      correct_phase_rate=payload["correct_phase_rate"],
                      classification_accuracy=payload["classification_accuracy"],
                      config=payload["config"])


# ---------------------------------------------------------------- manifests

def read_manifest(path) -> list[dict]:
    """Entries of {videoId, trackPath, globalPath, annotationPath?}.

    Relative paths resolve against the manifest's directory; referenced
    files must exist.
    """
    try:
        with open(path, "rb") as fh:
            payload = json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise FormatError(str(exc), path) from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None
    if not isinstance(payload, dict) or not isinstance(payload.get("entries"), list):
        raise FormatError("manifest must be an object with an 'entries' list", path)
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    seen = set()
    for pos, entry in enumerate(payload["entries"]):
        where = f"entries[{pos}]"
        if not isinstance(entry, dict):
            raise FormatError(f"{where} must be an object", path)
        for key in ("videoId", "trackPath", "globalPath"):
            if not isinstance(entry.get(key), str) or not entry[key]:
                raise FormatError(f"{where}.{key} must be a non-empty string", path)
        vid = entry["videoId"]
        if vid in seen:
            raise FormatError(f"duplicate videoId {vid!r}", path)
        seen.add(vid)
        resolved = {"videoId": vid}
        for key in ("trackPath", "globalPath", "annotationPath"):
            if key not in entry or entry[key] is None:
                continue
            if not isinstance(entry[key], str):
                raise FormatError(f"{where}.{key} must be a string", path)
            full = os.path.join(base, entry[key])
            if not os.path.exists(full):
                raise FormatError(f"{where}.{key}: no such file {entry[key]!r}", path)
            resolved[key] = full
        entries.append(resolved)
    if not entries:
        raise FormatError("manifest has no entries", path)
    return entries

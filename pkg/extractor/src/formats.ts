/**
 * Writers for the host toolkit's file formats, plus a reader for its mask
 * export.  Byte layouts follow the toolkit's format document: matrix files
 * are "TSMATRX1" + uint32 LE T, D, id length + utf-8 id + float64 LE cells
 * row-major; mask files are "WMASK001" + uint32 LE H, W + float64 LE cells.
 * Track and manifest files are plain JSON, which both runtimes emit in
 * round-trippable shortest form.
 */
import * as fs from "fs";
import * as path from "path";

import { DecodeFailure, InputError } from "./errors";
import { Box, WeightMask } from "./mask";
import { Keypoint, N_KEYPOINTS } from "./pose";

export const MATRIX_MAGIC = "TSMATRX1";
export const MASK_MAGIC = "WMASK001";

export interface TrackRecord {
  box: Box | null;
  pose: Keypoint[] | null;
}

function atomicWrite(file: string, data: Buffer | string): void {
  const tmp = `${file}.tmp`;
  fs.writeFileSync(tmp, data);
  fs.renameSync(tmp, file);
}

export function writeTrack(file: string, records: TrackRecord[]): void {
  const lines = records.map((rec, t) => {
    if (rec.pose !== null && rec.pose.length !== N_KEYPOINTS) {
      throw new InputError(`frame ${t + 1}: pose must have ${N_KEYPOINTS} points`);
    }
    return JSON.stringify({
      frame: t + 1,
      box: rec.box === null ? null
        : { cx: rec.box.cx, cy: rec.box.cy, w: rec.box.w, h: rec.box.h },
      pose: rec.pose === null ? null : rec.pose.map(([x, y]) => [x, y]),
    });
  });
  atomicWrite(file, lines.join("\n") + "\n");
}

export function writeMatrix(file: string, rows: Float64Array[], videoId: string): void {
  const t = rows.length;
  const d = t > 0 ? rows[0].length : 0;
  for (const row of rows) {
    if (row.length !== d) throw new InputError("ragged matrix rows");
  }
  const id = Buffer.from(videoId, "utf-8");
  const buf = Buffer.alloc(8 + 12 + id.length + t * d * 8);
  buf.write(MATRIX_MAGIC, 0, "ascii");
  buf.writeUInt32LE(t, 8);
  buf.writeUInt32LE(d, 12);
  buf.writeUInt32LE(id.length, 16);
  id.copy(buf, 20);
  let offset = 20 + id.length;
  for (const row of rows) {
    for (const v of row) {
      buf.writeDoubleLE(v, offset);
      offset += 8;
    }
  }
  atomicWrite(file, buf);
}

export function writeMask(file: string, mask: WeightMask): void {
  const buf = Buffer.alloc(16 + mask.values.length * 8);
  buf.write(MASK_MAGIC, 0, "ascii");
  buf.writeUInt32LE(mask.height, 8);
  buf.writeUInt32LE(mask.width, 12);
  for (let i = 0; i < mask.values.length; i++) {
    buf.writeDoubleLE(mask.values[i], 16 + 8 * i);
  }
  atomicWrite(file, buf);
}

export interface MaskFile {
  values: Float64Array;
  width: number;
  height: number;
}

export function readMaskFile(file: string): MaskFile {
  let data: Buffer;
  try {
    data = fs.readFileSync(file);
  } catch (err) {
    throw new DecodeFailure(`${file}: ${(err as Error).message}`);
  }
  if (data.length < 16 || data.toString("ascii", 0, 8) !== MASK_MAGIC) {
    throw new DecodeFailure(`${file}: missing ${MASK_MAGIC} magic`);
  }
  const height = data.readUInt32LE(8);
  const width = data.readUInt32LE(12);
  if (data.length !== 16 + height * width * 8) {
    throw new DecodeFailure(`${file}: expected ${16 + height * width * 8} bytes, ` +
      `got ${data.length}`);
  }
  const values = new Float64Array(height * width);
  for (let i = 0; i < values.length; i++) {
    values[i] = data.readDoubleLE(16 + 8 * i);
  }
  return { values, width, height };
}

export interface ManifestEntry {
  videoId: string;
  trackPath: string;
  globalPath: string;
}

/** Paths are stored relative to the manifest's own directory. */
export function writeManifest(file: string, entries: ManifestEntry[]): void {
  const base = path.dirname(path.resolve(file));
  const relative = entries.map(e => ({
    videoId: e.videoId,
    trackPath: path.relative(base, path.resolve(e.trackPath)),
    globalPath: path.relative(base, path.resolve(e.globalPath)),
  }));
  atomicWrite(file, JSON.stringify({ entries: relative }, null, 2) + "\n");
}

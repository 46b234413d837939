/**
 * Raw-RGB clip container and the bundled sample scene.
 *
 * Layout: 8-byte magic "RAWCLIP1", then three uint32 LE (frames, width,
 * height), then frames * height * width * 3 bytes of RGB24 row-major pixel
 * data.  No compression and no codec dependencies, so a checked-in fixture
 * stays byte-stable and trivially inspectable.
 */
import * as fs from "fs";

import { DecodeFailure, InputError } from "./errors";
import { SplitMix64 } from "./rng";

export const CLIP_MAGIC = "RAWCLIP1";

export interface Clip {
  frames: number;
  width: number;
  height: number;
  /** frames * height * width * 3 RGB bytes, frame-major then row-major. */
  pixels: Uint8Array;
}

export function frameView(clip: Clip, index: number): Uint8Array {
  if (index < 0 || index >= clip.frames) {
    throw new InputError(`frame index ${index} out of range [0, ${clip.frames})`);
  }
  const size = clip.width * clip.height * 3;
  return clip.pixels.subarray(index * size, (index + 1) * size);
}

/** Mean of the RGB channels in [0, 255], one value per pixel row-major. */
export function luminance(clip: Clip, index: number): Float64Array {
  const rgb = frameView(clip, index);
  const out = new Float64Array(clip.width * clip.height);
  for (let p = 0; p < out.length; p++) {
    out[p] = (rgb[3 * p] + rgb[3 * p + 1] + rgb[3 * p + 2]) / 3;
  }
  return out;
}

export function writeClip(path: string, clip: Clip): void {
  const expected = clip.frames * clip.height * clip.width * 3;
  if (clip.pixels.length !== expected) {
    throw new InputError(`pixel buffer holds ${clip.pixels.length} bytes, ` +
      `geometry needs ${expected}`);
  }
  const header = Buffer.alloc(20);
  header.write(CLIP_MAGIC, 0, "ascii");
  header.writeUInt32LE(clip.frames, 8);
  header.writeUInt32LE(clip.width, 12);
  header.writeUInt32LE(clip.height, 16);
  const tmp = `${path}.tmp`;
  fs.writeFileSync(tmp, Buffer.concat([header, Buffer.from(clip.pixels)]));
  fs.renameSync(tmp, path);
}

export function readClip(path: string): Clip {
  let data: Buffer;
  try {
    data = fs.readFileSync(path);
  } catch (err) {
    throw new DecodeFailure(`${path}: ${(err as Error).message}`);
  }
  if (data.length < 20 || data.toString("ascii", 0, 8) !== CLIP_MAGIC) {
    throw new DecodeFailure(`${path}: missing ${CLIP_MAGIC} magic`);
  }
  const frames = data.readUInt32LE(8);
  const width = data.readUInt32LE(12);
  const height = data.readUInt32LE(16);
  if (frames < 1 || width < 1 || height < 1) {
    throw new DecodeFailure(`${path}: degenerate geometry ${frames}x${width}x${height}`);
  }
  const expected = 20 + frames * height * width * 3;
  if (data.length !== expected) {
    throw new DecodeFailure(`${path}: expected ${expected} bytes, got ${data.length}`);
  }
  return { frames, width, height, pixels: new Uint8Array(data.subarray(20)) };
}

export interface SampleSceneOptions {
  frames?: number;
  width?: number;
  height?: number;
  seed?: number;
  /** 1-based frame left without a subject; 0 disables the gap. */
  blankFrame?: number;
}

/**
 * Deterministic test scene: dark noisy background with one bright subject
 * drifting left to right along a shallow arc.  One frame (default 16) has no
 * subject at all, exercising the null-record path downstream.
 */
export function makeSampleScene(options: SampleSceneOptions = {}): Clip {
  const frames = options.frames ?? 30;
  const width = options.width ?? 64;
  const height = options.height ?? 48;
  const blankFrame = options.blankFrame ?? 16;
  if (frames < 2 || width < 16 || height < 16) {
    throw new InputError(`scene needs >=2 frames of >=16x16, got ${frames}@${width}x${height}`);
  }
  const rng = new SplitMix64(options.seed ?? 11);
  const pixels = new Uint8Array(frames * height * width * 3);
  for (let t = 0; t < frames; t++) {
    const base = t * height * width * 3;
    for (let p = 0; p < height * width; p++) {
      const v = 40 + rng.randint(-20, 20);
      pixels[base + 3 * p] = v;
      pixels[base + 3 * p + 1] = v;
      pixels[base + 3 * p + 2] = v;
    }
    if (t + 1 === blankFrame) continue;
    const phase = t / (frames - 1);
    const cx = Math.round(10 + phase * (width - 22));
    const cy = Math.round(height / 2 + 5 * Math.sin(phase * Math.PI));
    const w = 10 + (t % 3);
    const h = 16 + (t % 2);
    const x0 = Math.max(0, cx - Math.floor(w / 2));
    const y0 = Math.max(0, cy - Math.floor(h / 2));
    const x1 = Math.min(width - 1, x0 + w - 1);
    const y1 = Math.min(height - 1, y0 + h - 1);
    for (let y = y0; y <= y1; y++) {
      for (let x = x0; x <= x1; x++) {
        const p = base + 3 * (y * width + x);
        const v = 220 + rng.randint(-15, 15);
        pixels[p] = v;
        pixels[p + 1] = Math.min(255, v + 10);
        pixels[p + 2] = Math.max(0, v - 10);
      }
    }
  }
  return { frames, width, height, pixels };
}

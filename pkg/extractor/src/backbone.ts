/**
 * Bundled frame-embedding backbone.
 *
 * The head mirrors a truncated classification network: a 7x7x512 feature
 * map is max-pooled over its spatial grid down to 512 channels, then a 1D
 * max-pool of size 8 (non-overlapping windows) reduces that to the 64
 * values the host toolkit expects per frame.  The feature map itself comes
 * from per-cell image statistics pushed through a fixed seeded projection,
 * so the whole stage is deterministic with no weights to download; a real
 * network drops in behind the same interface and reuses the head.
 */
import { InputError } from "./errors";
import { SplitMix64 } from "./rng";

export const GRID = 7;
export const CHANNELS = 512;
export const POOL = 8;
export const GLOBAL_DIM = CHANNELS / POOL;

const N_STATS = 8;
const PROJECTION_SEED = 0xb0b;

let projection: Float64Array | null = null;

/** Fixed CHANNELS x N_STATS bank, uniform in [-1, 1). */
function projectionBank(): Float64Array {
  if (projection === null) {
    const rng = new SplitMix64(PROJECTION_SEED);
    projection = new Float64Array(CHANNELS * N_STATS);
    for (let i = 0; i < projection.length; i++) {
      projection[i] = 2 * rng.nextFloat() - 1;
    }
  }
  return projection;
}

function cellStats(image: Float64Array, width: number,
                   x0: number, x1: number, y0: number, y1: number): number[] {
  let sum = 0, sumSq = 0, min = Infinity, max = -Infinity;
  let gradX = 0, gradY = 0, nx = 0, ny = 0;
  for (let y = y0; y < y1; y++) {
    for (let x = x0; x < x1; x++) {
      const v = image[y * width + x];
      sum += v;
      sumSq += v * v;
      if (v < min) min = v;
      if (v > max) max = v;
      if (x + 1 < x1) {
        gradX += Math.abs(image[y * width + x + 1] - v);
        nx++;
      }
      if (y + 1 < y1) {
        gradY += Math.abs(image[(y + 1) * width + x] - v);
        ny++;
      }
    }
  }
  const count = (x1 - x0) * (y1 - y0);
  const mean = sum / count;
  const variance = Math.max(0, sumSq / count - mean * mean);
  const center = image[Math.floor((y0 + y1 - 1) / 2) * width + Math.floor((x0 + x1 - 1) / 2)];
  return [mean, max, min, max - min, Math.sqrt(variance),
          nx > 0 ? gradX / nx : 0, ny > 0 ? gradY / ny : 0, center];
}

/**
 * Embed one weighted grayscale image (row-major width*height, luminance
 * already multiplied by the mask) into GLOBAL_DIM values.
 */
export function embedFrame(image: Float64Array, width: number, height: number): Float64Array {
  if (width < GRID || height < GRID) {
    throw new InputError(`frame must be at least ${GRID}x${GRID}, got ${width}x${height}`);
  }
  const bank = projectionBank();
  // Spatial max over the grid; with a pool filter as large as the grid this
  // collapses to one value per channel.
  const pooled = new Float64Array(CHANNELS).fill(-Infinity);
  for (let gy = 0; gy < GRID; gy++) {
    const y0 = Math.floor((gy * height) / GRID);
    const y1 = Math.floor(((gy + 1) * height) / GRID);
    for (let gx = 0; gx < GRID; gx++) {
      const x0 = Math.floor((gx * width) / GRID);
      const x1 = Math.floor(((gx + 1) * width) / GRID);
      const stats = cellStats(image, width, x0, x1, y0, y1);
      for (let c = 0; c < CHANNELS; c++) {
        let v = 0;
        for (let s = 0; s < N_STATS; s++) {
          v += bank[c * N_STATS + s] * stats[s];
        }
        if (v > pooled[c]) pooled[c] = v;
      }
    }
  }
  const out = new Float64Array(GLOBAL_DIM);
  for (let i = 0; i < GLOBAL_DIM; i++) {
    let m = -Infinity;
    for (let j = i * POOL; j < (i + 1) * POOL; j++) {
      if (pooled[j] > m) m = pooled[j];
    }
    out[i] = m;
  }
  return out;
}

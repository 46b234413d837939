/**
 * Subject-centered Gaussian weight mask, numerically matched to the host
 * toolkit's mask export (parity within 1e-6 per pixel is covered by tests
 * against a checked-in golden file).
 */
import { InputError } from "./errors";

export interface Box {
  cx: number;
  cy: number;
  w: number;
  h: number;
}

export interface WeightMask {
  /** Row-major H*W float64 weights. */
  values: Float64Array;
  width: number;
  height: number;
  /** Inclusive pixel bounds x0, y0, x1, y1 of the margin box. */
  mbox: [number, number, number, number];
  /** Constant used outside the margin box; null when it covers the frame. */
  outsideValue: number | null;
}

export function gaussianMask(frameW: number, frameH: number, box: Box,
                             marginPx = 20, outsideDrop = 0.2): WeightMask {
  if (frameW < 1 || frameH < 1) {
    throw new InputError(`frame must be at least 1x1, got ${frameW}x${frameH}`);
  }
  if (!(box.w > 0) || !(box.h > 0)) {
    throw new InputError(`box extent must be positive, got ${box.w}x${box.h}`);
  }
  if (box.cx + box.w / 2 < 0 || box.cx - box.w / 2 > frameW - 1 ||
      box.cy + box.h / 2 < 0 || box.cy - box.h / 2 > frameH - 1) {
    throw new InputError("box does not overlap the frame");
  }

  // Unclipped half-extents keep the surface invariant to frame clipping.
  const halfW = (box.w + marginPx) / 2;
  const halfH = (box.h + marginPx) / 2;
  const x0 = Math.max(0, Math.ceil(box.cx - halfW));
  const x1 = Math.min(frameW - 1, Math.floor(box.cx + halfW));
  const y0 = Math.max(0, Math.ceil(box.cy - halfH));
  const y1 = Math.min(frameH - 1, Math.floor(box.cy + halfH));
  if (x0 > x1 || y0 > y1) {
    throw new InputError("margin box contains no pixel");
  }

  const mw = x1 - x0 + 1;
  const mh = y1 - y0 + 1;
  const inside = new Float64Array(mw * mh);
  let gMin = Infinity;
  for (let r = 0; r < mh; r++) {
    const dy = (y0 + r - box.cy) / halfH;
    for (let c = 0; c < mw; c++) {
      const dx = (x0 + c - box.cx) / halfW;
      const g = Math.exp(-(dx * dx + dy * dy) / 2);
      inside[r * mw + c] = g;
      if ((r === 0 || r === mh - 1 || c === 0 || c === mw - 1) && g < gMin) {
        gMin = g;
      }
    }
  }

  if (x0 === 0 && y0 === 0 && x1 === frameW - 1 && y1 === frameH - 1) {
    return { values: inside, width: frameW, height: frameH,
             mbox: [x0, y0, x1, y1], outsideValue: null };
  }
  const outside = gMin - outsideDrop;
  const values = new Float64Array(frameW * frameH).fill(outside);
  for (let r = 0; r < mh; r++) {
    values.set(inside.subarray(r * mw, (r + 1) * mw), (y0 + r) * frameW + x0);
  }
  return { values, width: frameW, height: frameH,
           mbox: [x0, y0, x1, y1], outsideValue: outside };
}

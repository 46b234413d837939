/**
 * Bundled subject detector and track selection.
 *
 * The detector thresholds frame luminance and takes connected components
 * (4-neighborhood); each sufficiently large component becomes a candidate
 * box.  Track selection groups per-frame candidates by rank and keeps the
 * track with the largest mean box area as the main subject, which with the
 * bundled scenes is simply the dominant bright region per frame.
 */
import { Clip, luminance } from "./clip";
import { Box } from "./mask";

export interface Detection {
  box: Box;
  area: number;
}

export interface DetectorOptions {
  threshold?: number;
  minArea?: number;
}

/** Candidate boxes for one frame, largest pixel count first. */
export function detectFrame(clip: Clip, index: number,
                            options: DetectorOptions = {}): Detection[] {
  const threshold = options.threshold ?? 140;
  const minArea = options.minArea ?? 12;
  const lum = luminance(clip, index);
  const { width, height } = clip;
  const label = new Int32Array(lum.length).fill(-1);
  const components: Detection[] = [];
  const stack: number[] = [];
  for (let start = 0; start < lum.length; start++) {
    if (lum[start] < threshold || label[start] >= 0) continue;
    const id = components.length;
    let x0 = width, x1 = -1, y0 = height, y1 = -1, count = 0;
    label[start] = id;
    stack.push(start);
    while (stack.length > 0) {
      const p = stack.pop() as number;
      const x = p % width;
      const y = (p - x) / width;
      count++;
      if (x < x0) x0 = x;
      if (x > x1) x1 = x;
      if (y < y0) y0 = y;
      if (y > y1) y1 = y;
      const neighbors = [p - width, p + width];
      if (x > 0) neighbors.push(p - 1);
      if (x < width - 1) neighbors.push(p + 1);
      for (const q of neighbors) {
        if (q >= 0 && q < lum.length && label[q] < 0 && lum[q] >= threshold) {
          label[q] = id;
          stack.push(q);
        }
      }
    }
    if (count < minArea) continue;
    components.push({
      box: {
        cx: (x0 + x1) / 2,
        cy: (y0 + y1) / 2,
        w: x1 - x0 + 1,
        h: y1 - y0 + 1,
      },
      area: count,
    });
  }
  components.sort((a, b) => b.area - a.area);
  return components;
}

export interface SubjectTrack {
  /** One entry per frame; null where no candidate survived. */
  boxes: (Box | null)[];
  meanArea: number;
  /** Frames that contributed a box. */
  presentFrames: number;
}

/**
 * Pick the main subject across the clip.  Candidates are grouped by their
 * per-frame size rank (rank r of every frame forms track r) and the track
 * with the largest mean box area wins.
 */
export function selectSubjectTrack(perFrame: Detection[][]): SubjectTrack {
  const maxRank = Math.max(1, ...perFrame.map(d => d.length));
  let best: SubjectTrack | null = null;
  for (let rank = 0; rank < maxRank; rank++) {
    const boxes = perFrame.map(d => (rank < d.length ? d[rank].box : null));
    const areas = perFrame
      .filter(d => rank < d.length)
      .map(d => d[rank].box.w * d[rank].box.h);
    if (areas.length === 0) continue;
    const meanArea = areas.reduce((a, b) => a + b, 0) / areas.length;
    const track = { boxes, meanArea, presentFrames: areas.length };
    if (best === null || meanArea > best.meanArea) best = track;
  }
  if (best === null) {
    return { boxes: perFrame.map(() => null), meanArea: 0, presentFrames: 0 };
  }
  return best;
}

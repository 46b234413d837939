/**
 * Bundled 24-point pose provider.
 *
 * Joints are placed at fixed fractional offsets inside the subject box, in
 * the host toolkit's documented order with the hip first.  A learned model
 * would replace this via the provider registry; the layout exists so the
 * full pipeline runs deterministically without downloadable weights.
 */
import { Box } from "./mask";

export type Keypoint = [number, number];

export const N_KEYPOINTS = 24;

// x fraction of box width (negative = viewer left), y fraction of box
// height (negative = up), in the documented joint order.
const LAYOUT: ReadonlyArray<Keypoint> = [
  [0.0, 0.05],     // hip
  [-0.08, 0.08],   // left hip
  [0.08, 0.08],    // right hip
  [0.0, 0.0],      // spine lower
  [-0.09, 0.25],   // left knee
  [0.09, 0.25],    // right knee
  [0.0, -0.12],    // spine mid
  [-0.1, 0.41],    // left ankle
  [0.1, 0.41],     // right ankle
  [0.0, -0.25],    // spine upper
  [-0.12, 0.47],   // left foot
  [0.12, 0.47],    // right foot
  [0.0, -0.33],    // neck
  [-0.06, -0.3],   // left collar
  [0.06, -0.3],    // right collar
  [0.0, -0.42],    // head
  [-0.16, -0.28],  // left shoulder
  [0.16, -0.28],   // right shoulder
  [-0.22, -0.12],  // left elbow
  [0.22, -0.12],   // right elbow
  [-0.24, 0.03],   // left wrist
  [0.24, 0.03],    // right wrist
  [-0.25, 0.1],    // left hand
  [0.25, 0.1],     // right hand
];

export function estimatePose(box: Box): Keypoint[] {
  return LAYOUT.map(([fx, fy]) => [box.cx + fx * box.w, box.cy + fy * box.h]);
}

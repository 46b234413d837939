import { describe, expect, it } from "vitest";

import { estimatePose, N_KEYPOINTS } from "../src/pose";

describe("estimatePose", () => {
  const box = { cx: 40, cy: 60, w: 20, h: 40 };

  it("emits 24 keypoints with the hip first", () => {
    const pose = estimatePose(box);
    expect(pose.length).toBe(N_KEYPOINTS);
    const [hipX, hipY] = pose[0];
    expect(hipX).toBe(box.cx);
    expect(Math.abs(hipY - box.cy)).toBeLessThanOrEqual(box.h * 0.1);
  });

  it("stays inside the box", () => {
    for (const [x, y] of estimatePose(box)) {
      expect(x).toBeGreaterThanOrEqual(box.cx - box.w / 2);
      expect(x).toBeLessThanOrEqual(box.cx + box.w / 2);
      expect(y).toBeGreaterThanOrEqual(box.cy - box.h / 2);
      expect(y).toBeLessThanOrEqual(box.cy + box.h / 2);
    }
  });

  it("translates with the box", () => {
    const moved = estimatePose({ ...box, cx: box.cx + 7, cy: box.cy - 3 });
    const base = estimatePose(box);
    for (let i = 0; i < N_KEYPOINTS; i++) {
      expect(moved[i][0] - base[i][0]).toBeCloseTo(7, 12);
      expect(moved[i][1] - base[i][1]).toBeCloseTo(-3, 12);
    }
  });

  it("mirrors left/right pairs about the box center", () => {
    const pose = estimatePose(box);
    // left hip/right hip, knees, ankles, shoulders, wrists.
    for (const [l, r] of [[1, 2], [4, 5], [7, 8], [16, 17], [20, 21]]) {
      expect(pose[l][0] + pose[r][0]).toBeCloseTo(2 * box.cx, 12);
      expect(pose[l][1]).toBeCloseTo(pose[r][1], 12);
    }
  });

  it("scales with the box extents", () => {
    const small = estimatePose({ cx: 0, cy: 0, w: 10, h: 10 });
    const large = estimatePose({ cx: 0, cy: 0, w: 20, h: 30 });
    for (let i = 0; i < N_KEYPOINTS; i++) {
      expect(large[i][0]).toBeCloseTo(small[i][0] * 2, 12);
      expect(large[i][1]).toBeCloseTo(small[i][1] * 3, 12);
    }
  });
});

import * as fs from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { InputError } from "../src/errors";
import { readMaskFile } from "../src/formats";
import { gaussianMask } from "../src/mask";

const FIXTURES = path.join(__dirname, "..", "fixtures");

describe("gaussianMask", () => {
  it("matches the host-toolkit golden mask within 1e-6", () => {
    const meta = JSON.parse(
      fs.readFileSync(path.join(FIXTURES, "golden_mask.json"), "utf-8"));
    const golden = readMaskFile(path.join(FIXTURES, "golden_mask.bin"));
    expect(golden.width).toBe(meta.frameSize.width);
    expect(golden.height).toBe(meta.frameSize.height);
    const ours = gaussianMask(meta.frameSize.width, meta.frameSize.height,
                              meta.box, meta.marginPx, meta.outsideDrop);
    let worst = 0;
    for (let i = 0; i < golden.values.length; i++) {
      const diff = Math.abs(golden.values[i] - ours.values[i]);
      if (diff > worst) worst = diff;
    }
    expect(worst).toBeLessThanOrEqual(1e-6);
  });

  it("peaks at the box center", () => {
    const mask = gaussianMask(100, 100, { cx: 50, cy: 50, w: 20, h: 30 });
    const at = (x: number, y: number) => mask.values[y * 100 + x];
    expect(at(50, 50)).toBe(1);
    for (let i = 0; i < mask.values.length; i++) {
      expect(mask.values[i]).toBeLessThanOrEqual(1);
    }
  });

  it("uses ring minimum minus the drop outside", () => {
    const mask = gaussianMask(100, 100, { cx: 50, cy: 50, w: 20, h: 30 });
    const [x0, y0, x1, y1] = mask.mbox;
    let ringMin = Infinity;
    for (let x = x0; x <= x1; x++) {
      ringMin = Math.min(ringMin, mask.values[y0 * 100 + x], mask.values[y1 * 100 + x]);
    }
    for (let y = y0; y <= y1; y++) {
      ringMin = Math.min(ringMin, mask.values[y * 100 + x0], mask.values[y * 100 + x1]);
    }
    expect(mask.outsideValue).toBe(ringMin - 0.2);
    expect(mask.values[0]).toBe(mask.outsideValue);
  });

  it("reports null outside when the margin box covers the frame", () => {
    const mask = gaussianMask(10, 10, { cx: 4.5, cy: 4.5, w: 6, h: 6 });
    expect(mask.outsideValue).toBeNull();
    expect(mask.mbox).toEqual([0, 0, 9, 9]);
  });

  it("decays monotonically away from the center along the center row", () => {
    const mask = gaussianMask(101, 101, { cx: 50, cy: 50, w: 30, h: 30 });
    const [x0, , x1] = mask.mbox;
    for (let x = 51; x <= x1; x++) {
      expect(mask.values[50 * 101 + x]).toBeLessThan(mask.values[50 * 101 + x - 1]);
    }
    for (let x = 49; x >= x0; x--) {
      expect(mask.values[50 * 101 + x]).toBeLessThan(mask.values[50 * 101 + x + 1]);
    }
  });

  it("rejects bad geometry", () => {
    expect(() => gaussianMask(0, 10, { cx: 1, cy: 1, w: 2, h: 2 })).toThrow(InputError);
    expect(() => gaussianMask(10, 10, { cx: 1, cy: 1, w: 0, h: 2 })).toThrow(InputError);
    expect(() => gaussianMask(10, 10, { cx: 50, cy: 1, w: 2, h: 2 })).toThrow(/overlap/);
  });
});

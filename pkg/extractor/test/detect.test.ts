import * as path from "path";
import { describe, expect, it } from "vitest";

import { readClip } from "../src/clip";
import { detectFrame, selectSubjectTrack, Detection } from "../src/detect";

const FIXTURE = path.join(__dirname, "..", "fixtures", "sample.clip");

describe("detectFrame", () => {
  it("finds the bright subject", () => {
    const clip = readClip(FIXTURE);
    const detections = detectFrame(clip, 0);
    expect(detections.length).toBe(1);
    const { box, area } = detections[0];
    expect(box.w).toBe(10);
    expect(box.h).toBe(16);
    expect(area).toBe(160);
    expect(box.cx).toBeGreaterThan(4);
    expect(box.cx).toBeLessThan(16);
  });

  it("returns nothing on the subject-free frame", () => {
    const clip = readClip(FIXTURE);
    expect(detectFrame(clip, 15)).toEqual([]);
  });

  it("respects threshold and minimum area", () => {
    const clip = readClip(FIXTURE);
    expect(detectFrame(clip, 0, { threshold: 250 })).toEqual([]);
    expect(detectFrame(clip, 0, { minArea: 1000 })).toEqual([]);
  });

  it("is deterministic", () => {
    const clip = readClip(FIXTURE);
    expect(detectFrame(clip, 3)).toEqual(detectFrame(clip, 3));
  });
});

describe("selectSubjectTrack", () => {
  const det = (cx: number, w: number, h: number): Detection =>
    ({ box: { cx, cy: 10, w, h }, area: w * h });

  it("keeps the track with the largest mean box area", () => {
    const perFrame = [
      [det(5, 10, 10), det(30, 4, 4)],
      [det(6, 10, 10), det(30, 4, 4)],
      [det(7, 10, 10)],
    ];
    const track = selectSubjectTrack(perFrame);
    expect(track.meanArea).toBe(100);
    expect(track.presentFrames).toBe(3);
    expect(track.boxes.map(b => b && b.cx)).toEqual([5, 6, 7]);
  });

  it("prefers a larger secondary track", () => {
    // Rank-0 boxes are larger per pixel count but smaller per box area;
    // selection goes by mean box area.
    const perFrame = [
      [{ box: { cx: 5, cy: 5, w: 4, h: 4 }, area: 16 },
       { box: { cx: 20, cy: 5, w: 10, h: 10 }, area: 10 }],
      [{ box: { cx: 5, cy: 5, w: 4, h: 4 }, area: 16 },
       { box: { cx: 21, cy: 5, w: 10, h: 10 }, area: 10 }],
    ];
    const track = selectSubjectTrack(perFrame);
    expect(track.meanArea).toBe(100);
    expect(track.boxes[0]?.cx).toBe(20);
  });

  it("handles gaps and empty inputs", () => {
    const track = selectSubjectTrack([[det(5, 6, 6)], [], [det(6, 6, 6)]]);
    expect(track.boxes[1]).toBeNull();
    expect(track.presentFrames).toBe(2);
    const empty = selectSubjectTrack([[], []]);
    expect(empty.boxes).toEqual([null, null]);
    expect(empty.meanArea).toBe(0);
  });
});

import { spawnSync } from "child_process";
import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { afterEach, describe, expect, it } from "vitest";
import { ZodError } from "zod";

import { DecodeFailure, ModelLoadFailure } from "../src/errors";
import { extract } from "../src/extract";

const FIXTURE = path.join(__dirname, "..", "fixtures", "sample.clip");

let tmpDirs: string[] = [];

function tmpDir(): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "extract-test-"));
  tmpDirs.push(dir);
  return dir;
}

afterEach(() => {
  for (const dir of tmpDirs) fs.rmSync(dir, { recursive: true, force: true });
  tmpDirs = [];
});

describe("extract", () => {
  it("emits one track record and one 64-vector per frame", () => {
    const out = tmpDir();
    const result = extract(FIXTURE, out, { videoId: "sample" });
    expect(result.frames).toBe(30);
    expect(result.missingBoxes).toBe(1);

    const lines = fs.readFileSync(result.trackPath, "utf-8").trimEnd().split("\n");
    expect(lines.length).toBe(30);
    const records = lines.map(l => JSON.parse(l));
    expect(records.map(r => r.frame)).toEqual(
      Array.from({ length: 30 }, (_, i) => i + 1));
    expect(records[15].box).toBeNull();
    expect(records[15].pose).toBeNull();
    for (const rec of [records[0], records[14], records[29]]) {
      expect(rec.box.w).toBeGreaterThan(0);
      expect(rec.pose.length).toBe(24);
    }

    const data = fs.readFileSync(result.globalPath);
    expect(data.toString("ascii", 0, 8)).toBe("TSMATRX1");
    expect(data.readUInt32LE(8)).toBe(30);
    expect(data.readUInt32LE(12)).toBe(64);
  });

  it("writes byte-identical outputs on repeated runs", () => {
    const a = extract(FIXTURE, tmpDir(), { videoId: "v" });
    const b = extract(FIXTURE, tmpDir(), { videoId: "v" });
    for (const key of ["trackPath", "globalPath", "logPath"] as const) {
      expect(fs.readFileSync(a[key]).equals(fs.readFileSync(b[key]))).toBe(true);
    }
  });

  it("derives a video id from the clip name", () => {
    const result = extract(FIXTURE, tmpDir());
    expect(result.videoId).toBe("sample");
  });

  it("logs providers and per-frame failures", () => {
    const result = extract(FIXTURE, tmpDir(), { videoId: "sample" });
    const log = fs.readFileSync(result.logPath, "utf-8");
    expect(log).toContain("providers: detector=threshold-blob/1.0 " +
      "pose=box-grid/1.0 backbone=pool-head/1.0 device=cpu");
    expect(log).toContain("subject: largest-mean-area track");
    expect(log).toContain("frame 16: no detection");
    expect(log).toContain("failures: boxes=1 poses=1");
  });

  it("rejects unknown providers and bad clips", () => {
    const out = tmpDir();
    expect(() => extract(FIXTURE, out, { detector: "mobilenet-ssd" }))
      .toThrow(ModelLoadFailure);
    expect(() => extract(FIXTURE, out, { pose: "movenet" }))
      .toThrow(ModelLoadFailure);
    expect(() => extract(FIXTURE, out, { backbone: "resnet50" }))
      .toThrow(ModelLoadFailure);
    const junk = path.join(out, "junk.clip");
    fs.writeFileSync(junk, "not a clip");
    expect(() => extract(junk, out)).toThrow(DecodeFailure);
  });

  it("rejects invalid config values", () => {
    expect(() => extract(FIXTURE, tmpDir(), { marginPx: -1 })).toThrow(ZodError);
    expect(() => extract(FIXTURE, tmpDir(), { minArea: 0 })).toThrow(ZodError);
  });
});

describe("host-toolkit conformance", () => {
  it("passes the host CLI's schema validation end to end", () => {
    const out = tmpDir();
    const result = extract(FIXTURE, out, { videoId: "sample" });
    const seriesDir = path.join(out, "series");
    const run = spawnSync("vidalign",
      ["build", "--manifest", result.manifestPath, "--out-dir", seriesDir],
      { encoding: "utf-8" });
    expect(run.error, "vidalign CLI must be installed").toBeUndefined();
    expect(run.status, run.stderr).toBe(0);
    const series = path.join(seriesDir, "sample.series.bin");
    expect(fs.existsSync(series)).toBe(true);
    const header = fs.readFileSync(series);
    expect(header.toString("ascii", 0, 8)).toBe("TSMATRX1");
    expect(header.readUInt32LE(8)).toBe(30);
    expect(header.readUInt32LE(12)).toBe(166);
  });
});

import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { afterEach, describe, expect, it } from "vitest";

import { frameView, luminance, makeSampleScene, readClip, writeClip,
         CLIP_MAGIC } from "../src/clip";
import { DecodeFailure, InputError } from "../src/errors";

const FIXTURE = path.join(__dirname, "..", "fixtures", "sample.clip");

let tmpDirs: string[] = [];

function tmpFile(name: string): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "clip-test-"));
  tmpDirs.push(dir);
  return path.join(dir, name);
}

afterEach(() => {
  for (const dir of tmpDirs) fs.rmSync(dir, { recursive: true, force: true });
  tmpDirs = [];
});

describe("container", () => {
  it("round-trips byte-identically", () => {
    const clip = makeSampleScene({ frames: 4, width: 20, height: 18 });
    const file = tmpFile("a.clip");
    writeClip(file, clip);
    const again = readClip(file);
    expect(again.frames).toBe(4);
    expect(again.width).toBe(20);
    expect(again.height).toBe(18);
    expect(Buffer.from(again.pixels).equals(Buffer.from(clip.pixels))).toBe(true);
    const second = tmpFile("b.clip");
    writeClip(second, again);
    expect(fs.readFileSync(file).equals(fs.readFileSync(second))).toBe(true);
  });

  it("rejects a wrong magic", () => {
    const file = tmpFile("bad.clip");
    fs.writeFileSync(file, Buffer.from("NOTACLIP" + "\0".repeat(12)));
    expect(() => readClip(file)).toThrow(DecodeFailure);
  });

  it("rejects truncated pixel data", () => {
    const clip = makeSampleScene({ frames: 2, width: 16, height: 16 });
    const file = tmpFile("short.clip");
    writeClip(file, clip);
    const data = fs.readFileSync(file);
    fs.writeFileSync(file, data.subarray(0, data.length - 5));
    expect(() => readClip(file)).toThrow(/expected .* bytes/);
  });

  it("rejects a buffer that disagrees with the header", () => {
    const clip = makeSampleScene({ frames: 2, width: 16, height: 16 });
    expect(() => writeClip(tmpFile("x.clip"),
      { ...clip, pixels: clip.pixels.subarray(1) })).toThrow(InputError);
  });

  it("exposes frames as views", () => {
    const clip = makeSampleScene({ frames: 3, width: 16, height: 16 });
    const view = frameView(clip, 2);
    expect(view.length).toBe(16 * 16 * 3);
    expect(() => frameView(clip, 3)).toThrow(InputError);
    const lum = luminance(clip, 0);
    expect(lum.length).toBe(16 * 16);
  });
});

describe("sample scene", () => {
  it("is deterministic", () => {
    const a = makeSampleScene();
    const b = makeSampleScene();
    expect(Buffer.from(a.pixels).equals(Buffer.from(b.pixels))).toBe(true);
  });

  it("matches the checked-in fixture byte-for-byte", () => {
    // fixtures/sample.clip is regenerated by `extractor make-clip`; drift
    // here means the generator changed under the fixture.
    const clip = makeSampleScene();
    const file = tmpFile("regen.clip");
    writeClip(file, clip);
    expect(fs.readFileSync(file).equals(fs.readFileSync(FIXTURE))).toBe(true);
  });

  it("leaves the configured frame without a subject", () => {
    const clip = makeSampleScene();
    // Blank frame: every pixel stays near the background level.
    const blank = luminance(clip, 15);
    expect(Math.max(...blank)).toBeLessThan(80);
    const present = luminance(clip, 0);
    expect(Math.max(...present)).toBeGreaterThan(190);
  });

  it("validates geometry", () => {
    expect(() => makeSampleScene({ frames: 1 })).toThrow(InputError);
    expect(() => makeSampleScene({ width: 8 })).toThrow(InputError);
  });

  it("starts with the documented magic", () => {
    expect(fs.readFileSync(FIXTURE).toString("ascii", 0, 8)).toBe(CLIP_MAGIC);
  });
});

#!/usr/bin/env node
/**
 * Command-line front end.
 *
 *   extractor extract sample.clip --out-dir out
 *   extractor make-clip fixtures/sample.clip
 *   extractor emit-mask mask.bin --clip sample.clip --frame 1
 *
 * Exit codes: 0 success, 2 bad input (unparsable files, unknown providers,
 * bad arguments), 1 unexpected failure.
 */
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { ZodError } from "zod";

import { makeSampleScene, readClip, writeClip } from "./clip";
import { detectFrame } from "./detect";
import { ExtractorError } from "./errors";
import { extract } from "./extract";
import { writeMask } from "./formats";
import { gaussianMask } from "./mask";

function fail(message: string, code: number): never {
  process.stderr.write(`error: ${message}\n`);
  process.exit(code);
}

export function main(argv: string[]): void {
  yargs(argv)
    .scriptName("extractor")
    .strict()
    .demandCommand(1)
    .fail((msg, err) => {
      if (err) throw err;
      fail(msg, 2);
    })
    .command(
      "extract <clip>",
      "run the full pipeline on a clip",
      y => y
        .positional("clip", { type: "string", demandOption: true })
        .option("out-dir", { type: "string", default: "out" })
        .option("video-id", { type: "string" })
        .option("detector", { type: "string", default: "threshold-blob" })
        .option("pose", { type: "string", default: "box-grid" })
        .option("backbone", { type: "string", default: "pool-head" })
        .option("margin-px", { type: "number", default: 20 })
        .option("drop", { type: "number", default: 0.2 })
        .option("threshold", { type: "number", default: 140 })
        .option("min-area", { type: "number", default: 12 })
        .option("device", { type: "string", default: "cpu" }),
      args => {
        const result = extract(args.clip, args.outDir, {
          videoId: args.videoId,
          detector: args.detector,
          pose: args.pose,
          backbone: args.backbone,
          marginPx: args.marginPx,
          outsideDrop: args.drop,
          threshold: args.threshold,
          minArea: args.minArea,
          device: args.device,
        });
        process.stdout.write(
          `extracted ${result.videoId}: ${result.frames} frames, ` +
          `${result.missingBoxes} without detection\n` +
          `  track    ${result.trackPath}\n` +
          `  global   ${result.globalPath}\n` +
          `  manifest ${result.manifestPath}\n` +
          `  log      ${result.logPath}\n`);
      })
    .command(
      "make-clip <out>",
      "write the deterministic sample scene",
      y => y
        .positional("out", { type: "string", demandOption: true })
        .option("frames", { type: "number", default: 30 })
        .option("width", { type: "number", default: 64 })
        .option("height", { type: "number", default: 48 })
        .option("seed", { type: "number", default: 11 })
        .option("blank-frame", { type: "number", default: 16,
                                 describe: "1-based subject-free frame, 0 to disable" }),
      args => {
        const clip = makeSampleScene({
          frames: args.frames, width: args.width, height: args.height,
          seed: args.seed, blankFrame: args.blankFrame,
        });
        writeClip(args.out, clip);
        process.stdout.write(
          `wrote ${args.out}: ${clip.frames} frames ${clip.width}x${clip.height}\n`);
      })
    .command(
      "emit-mask <out>",
      "export the mask for one frame's detected subject",
      y => y
        .positional("out", { type: "string", demandOption: true })
        .option("clip", { type: "string", demandOption: true })
        .option("frame", { type: "number", default: 1, describe: "1-based frame" })
        .option("margin-px", { type: "number", default: 20 })
        .option("drop", { type: "number", default: 0.2 })
        .option("threshold", { type: "number", default: 140 })
        .option("min-area", { type: "number", default: 12 }),
      args => {
        const clip = readClip(args.clip);
        if (args.frame < 1 || args.frame > clip.frames) {
          fail(`frame ${args.frame} out of range [1, ${clip.frames}]`, 2);
        }
        const detections = detectFrame(clip, args.frame - 1, {
          threshold: args.threshold, minArea: args.minArea });
        if (detections.length === 0) {
          fail(`no subject detected on frame ${args.frame}`, 2);
        }
        const box = detections[0].box;
        const mask = gaussianMask(clip.width, clip.height, box,
                                  args.marginPx, args.drop);
        writeMask(args.out, mask);
        process.stdout.write(
          `wrote ${args.out}: frame ${args.frame} box ` +
          `cx=${box.cx} cy=${box.cy} w=${box.w} h=${box.h} ` +
          `size ${clip.width}x${clip.height}\n`);
      })
    .parseSync();
}

if (require.main === module) {
  try {
    main(hideBin(process.argv));
  } catch (err) {
    if (err instanceof ExtractorError) {
      fail(err.message, 2);
    }
    if (err instanceof ZodError) {
      fail(err.issues.map(i => `${i.path.join(".")}: ${i.message}`).join("; "), 2);
    }
    if (err instanceof Error && "code" in err && typeof err.code === "string") {
      fail(err.message, 1);
    }
    throw err;
  }
}

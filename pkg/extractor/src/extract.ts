/**
 * End-to-end pipeline: clip -> subject track + per-frame global features,
 * written in the host toolkit's formats together with a manifest and a
 * sidecar log.  Model stages are resolved through a provider registry so a
 * learned detector/pose/backbone can replace the bundled deterministic ones
 * without touching the pipeline.
 */
import * as path from "path";
import * as fs from "fs";
import { z } from "zod";

import { embedFrame } from "./backbone";
import { Clip, luminance, readClip } from "./clip";
import { detectFrame, Detection, selectSubjectTrack } from "./detect";
import { ModelLoadFailure } from "./errors";
import { gaussianMask, Box } from "./mask";
import { estimatePose, Keypoint } from "./pose";
import { writeManifest, writeMatrix, writeTrack, TrackRecord } from "./formats";

export const ConfigSchema = z.object({
  videoId: z.string().min(1).regex(/^[^\r\n]+$/).optional(),
  detector: z.string().default("threshold-blob"),
  pose: z.string().default("box-grid"),
  backbone: z.string().default("pool-head"),
  // Mask parameters mirror the host toolkit's defaults.
  marginPx: z.number().nonnegative().default(20),
  outsideDrop: z.number().default(0.2),
  threshold: z.number().default(140),
  minArea: z.number().int().positive().default(12),
  device: z.string().default("cpu"),
});

export type ExtractorConfig = z.infer<typeof ConfigSchema>;

export interface Providers {
  detect: (clip: Clip, index: number) => Detection[];
  pose: (box: Box) => Keypoint[];
  embed: (image: Float64Array, width: number, height: number) => Float64Array;
  versions: { detector: string; pose: string; backbone: string };
}

const DETECTORS: Record<string, string> = { "threshold-blob": "1.0" };
const POSE_MODELS: Record<string, string> = { "box-grid": "1.0" };
const BACKBONES: Record<string, string> = { "pool-head": "1.0" };

export function resolveProviders(config: ExtractorConfig): Providers {
  const missing = (kind: string, name: string, known: Record<string, string>) =>
    new ModelLoadFailure(`unknown ${kind} ${JSON.stringify(name)}; ` +
      `available: ${Object.keys(known).join(", ")}`);
  if (!(config.detector in DETECTORS)) {
    throw missing("detector", config.detector, DETECTORS);
  }
  if (!(config.pose in POSE_MODELS)) {
    throw missing("pose model", config.pose, POSE_MODELS);
  }
  if (!(config.backbone in BACKBONES)) {
    throw missing("backbone", config.backbone, BACKBONES);
  }
  return {
    detect: (clip, index) => detectFrame(clip, index, {
      threshold: config.threshold, minArea: config.minArea }),
    pose: box => estimatePose(box),
    embed: (image, width, height) => embedFrame(image, width, height),
    versions: {
      detector: `${config.detector}/${DETECTORS[config.detector]}`,
      pose: `${config.pose}/${POSE_MODELS[config.pose]}`,
      backbone: `${config.backbone}/${BACKBONES[config.backbone]}`,
    },
  };
}

export interface ExtractResult {
  videoId: string;
  trackPath: string;
  globalPath: string;
  logPath: string;
  manifestPath: string;
  frames: number;
  missingBoxes: number;
}

function defaultVideoId(clipPath: string): string {
  const stem = path.basename(clipPath).replace(/\.[^.]*$/, "");
  const clean = stem.replace(/[^-._a-zA-Z0-9]/g, "_");
  return clean.length > 0 ? clean : "clip";
}

export function extract(clipPath: string, outDir: string,
                        rawConfig: Partial<ExtractorConfig> = {}): ExtractResult {
  const config = ConfigSchema.parse(rawConfig);
  const providers = resolveProviders(config);
  const clip = readClip(clipPath);
  const videoId = config.videoId ?? defaultVideoId(clipPath);
  fs.mkdirSync(outDir, { recursive: true });

  const perFrame = [];
  for (let t = 0; t < clip.frames; t++) {
    perFrame.push(providers.detect(clip, t));
  }
  const track = selectSubjectTrack(perFrame);

  const records: TrackRecord[] = [];
  const globals: Float64Array[] = [];
  const failureLines: string[] = [];
  for (let t = 0; t < clip.frames; t++) {
    const box = track.boxes[t];
    records.push({ box, pose: box === null ? null : providers.pose(box) });
    const lum = luminance(clip, t);
    const weighted = new Float64Array(lum.length);
    if (box === null) {
      // No subject found: embed with neutral weights rather than reusing a
      // stale box, and account for it in the sidecar log.
      failureLines.push(`frame ${t + 1}: no detection (box=null pose=null, neutral weights)`);
      for (let p = 0; p < lum.length; p++) weighted[p] = lum[p] / 255;
    } else {
      const mask = gaussianMask(clip.width, clip.height, box,
                                config.marginPx, config.outsideDrop);
      for (let p = 0; p < lum.length; p++) {
        weighted[p] = (lum[p] / 255) * mask.values[p];
      }
    }
    globals.push(providers.embed(weighted, clip.width, clip.height));
  }

  const trackPath = path.join(outDir, `${videoId}.track.jsonl`);
  const globalPath = path.join(outDir, `${videoId}.global.bin`);
  const logPath = path.join(outDir, `${videoId}.extract.log`);
  const manifestPath = path.join(outDir, "manifest.json");
  writeTrack(trackPath, records);
  writeMatrix(globalPath, globals, videoId);
  writeManifest(manifestPath, [{ videoId, trackPath, globalPath }]);

  const missingBoxes = clip.frames - track.presentFrames;
  const log = [
    `clip: ${path.basename(clipPath)} frames=${clip.frames} size=${clip.width}x${clip.height}`,
    `providers: detector=${providers.versions.detector} pose=${providers.versions.pose} ` +
      `backbone=${providers.versions.backbone} device=${config.device}`,
    `subject: largest-mean-area track, meanArea=${track.meanArea} ` +
      `presentFrames=${track.presentFrames}/${clip.frames}`,
    ...failureLines,
    `failures: boxes=${missingBoxes} poses=${missingBoxes}`,
  ];
  const tmp = `${logPath}.tmp`;
  fs.writeFileSync(tmp, log.join("\n") + "\n");
  fs.renameSync(tmp, logPath);

  return { videoId, trackPath, globalPath, logPath, manifestPath,
           frames: clip.frames, missingBoxes };
}

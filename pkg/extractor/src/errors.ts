export class ExtractorError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

/** A named detector/pose/backbone provider is not in the registry. */
export class ModelLoadFailure extends ExtractorError {}

/** The input clip file cannot be parsed. */
export class DecodeFailure extends ExtractorError {}

/** Bad caller-supplied values (config fields, box geometry, paths). */
export class InputError extends ExtractorError {}

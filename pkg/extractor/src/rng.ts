/**
 * Counter-based SplitMix64 generator, same constants and bit stream as the
 * host toolkit's documented PRNG (see ../docs/FORMATS.md in the repo root).
 * Output i is mix64(seed + i * GAMMA); no hidden state beyond the counter,
 * so two generators with the same seed always agree.
 */

const MASK64 = (1n << 64n) - 1n;
const GAMMA = 0x9e3779b97f4a7c15n;
const MIX1 = 0xbf58476d1ce4e5b9n;
const MIX2 = 0x94d049bb133111ebn;

export function mix64(z: bigint): bigint {
  z &= MASK64;
  z = ((z ^ (z >> 30n)) * MIX1) & MASK64;
  z = ((z ^ (z >> 27n)) * MIX2) & MASK64;
  return z ^ (z >> 31n);
}

export class SplitMix64 {
  private readonly seed: bigint;
  private count = 0n;

  constructor(seed: bigint | number) {
    this.seed = BigInt(seed) & MASK64;
  }

  nextUint64(): bigint {
    this.count += 1n;
    return mix64((this.seed + this.count * GAMMA) & MASK64);
  }

  /** Uniform in [0, 1) with 53 random bits. */
  nextFloat(): number {
    return Number(this.nextUint64() >> 11n) * 2 ** -53;
  }

  /** Uniform integer in [lo, hi], both ends inclusive. */
  randint(lo: number, hi: number): number {
    if (hi < lo) throw new RangeError(`empty range [${lo}, ${hi}]`);
    return lo + Math.floor(this.nextFloat() * (hi - lo + 1));
  }
}

/** Stream-independent child seed, matching the host toolkit's derivation. */
export function deriveSeed(seed: bigint | number, index: bigint | number): bigint {
  const s = BigInt(seed) & MASK64;
  const i = BigInt(index) & MASK64;
  return mix64(s ^ mix64(((i + 1n) * GAMMA) & MASK64));
}

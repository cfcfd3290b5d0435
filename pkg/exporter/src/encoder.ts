/**
 * Sentence encoders.
 *
 * The two production encoders wrap pretrained transformer checkpoints
 * through transformers.js feature extraction: `contextual` for a plain
 * contextual encoder, `siamese` for a Siamese-trained sentence encoder
 * (a sentence-similarity checkpoint consumed as published; no training
 * happens here). Pooling is mean over token states by default, with
 * first-token pooling available for comparison.
 */

export type EncoderKind = "contextual" | "siamese";
export type Pooling = "mean" | "first-token";

export interface SentenceEncoder {
  /** recorded in the store header's backend field */
  readonly backendName: string;
  /** encode a batch, preserving input order */
  encode(sentences: string[]): Promise<number[][]>;
}

export const DEFAULT_MODELS: Record<EncoderKind, string> = {
  contextual: "Xenova/bert-base-uncased",
  siamese: "Xenova/all-MiniLM-L6-v2",
};

export class ModelLoadError extends Error {}

// Resolved at runtime so environments without the optional transformers
// runtime can still install, build and run the offline code paths.
const TRANSFORMERS_MODULE = "@xenova/transformers";

export async function createTransformerEncoder(
  kind: EncoderKind,
  modelName: string,
  pooling: Pooling,
): Promise<SentenceEncoder> {
  let pipelineFactory: (task: string, model: string) => Promise<any>;
  try {
    const transformers: any = await import(TRANSFORMERS_MODULE);
    pipelineFactory = transformers.pipeline as typeof pipelineFactory;
  } catch (err) {
    throw new ModelLoadError(`transformers runtime unavailable: ${String(err)}`);
  }
  let extractor: any;
  try {
    extractor = await pipelineFactory("feature-extraction", modelName);
  } catch (err) {
    throw new ModelLoadError(`cannot load model ${modelName}: ${String(err)}`);
  }
  const poolingOption = pooling === "mean" ? "mean" : "cls";
  return {
    backendName: kind,
    async encode(sentences: string[]): Promise<number[][]> {
      const vectors: number[][] = [];
      for (const sentence of sentences) {
        const output = await extractor(sentence, { pooling: poolingOption });
        vectors.push(Array.from(output.data as Float32Array).map(Number));
      }
      return vectors;
    },
  };
}

/* tslint:disable */
/* eslint-disable */

/**
 * Scalability verdict and certificate for a descriptor like `csum(3*CP2)`.
 */
export function classify(descriptor: string): string;

/**
 * Cohomology ranks and representatives of a presentation through `cap`.
 */
export function cohomology(presentation: string, cap: number): string;

/**
 * Minimal model of a presentation through `cap`.
 */
export function model(presentation: string, cap: number): string;

/**
 * Pairing of a model generator with a bracket, optionally rescaled by `scale`
 * (0 for none).
 */
export function pair(presentation: string, _class: string, bracket: string, scale: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classify: (a: number, b: number) => [number, number, number, number];
    readonly cohomology: (a: number, b: number, c: number) => [number, number, number, number];
    readonly model: (a: number, b: number, c: number) => [number, number, number, number];
    readonly pair: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;

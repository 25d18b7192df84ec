/* tslint:disable */
/* eslint-disable */

/**
 * Multi-start Lie-Cartan search on a catalog entry.
 */
export function cartan_search(name: string, negate: boolean, seed: number, starts: number): string;

/**
 * Catalog entry names, as a JSON array.
 */
export function catalog_names(): string;

/**
 * Moves the Lorentzian Heisenberg bracket by a random element of
 * `O(1,2)_0` of size `radius`, then runs the norm-minimizing flow back.
 */
export function flow_demo(seed: number, radius: number): string;

/**
 * Heisenberg algebra `[e1,e2] = e3` with the symmetric metric whose upper
 * triangle is `(g11, g12, g13, g22, g23, g33)`: signature, curvature,
 * soliton decomposition and a Lie-Cartan search.
 */
export function heis3_explore(g11: number, g12: number, g13: number, g22: number, g23: number, g33: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly cartan_search: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly catalog_names: () => [number, number];
    readonly flow_demo: (a: number, b: number) => [number, number];
    readonly heis3_explore: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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

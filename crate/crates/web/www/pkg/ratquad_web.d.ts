/* tslint:disable */
/* eslint-disable */

/**
 * Integral or `2m`-th power norm on the real axis, with the adaptive oracle
 * attached.
 */
export function axis_quadrature(_function: string, m: number, phi: number, norm: boolean): string;

/**
 * Nodes on `|z| = r` for one `phi`, plus the function's poles for drawing.
 */
export function circle_nodes(_function: string, r: number, m: number, phi: number): string;

/**
 * An extremal function, its sharpness report and `|W|` sampled along the
 * contour (angle on the circle, `x` elsewhere).
 */
export function extremal_profile(kind: string, n: number, delta: number, p: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly axis_quadrature: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly circle_nodes: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly extremal_profile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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

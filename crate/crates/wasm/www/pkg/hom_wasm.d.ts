/* tslint:disable */
/* eslint-disable */

/**
 * Coincidence probabilities `p_VV` for the whole state and for its
 * cross-channel and same-channel parts.
 */
export class ScanCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly compensation_um: number;
    readonly delta_l_um: Float64Array;
    /**
     * Predicted dip positions.
     */
    readonly dips_um: Float64Array;
    readonly psi1: Float64Array;
    readonly psi2: Float64Array;
    readonly total: Float64Array;
}

/**
 * Circuit parameters shared by the scan and Schmidt operations, in the
 * units of the configuration file.
 */
export class Setup {
    free(): void;
    [Symbol.dispose](): void;
    constructor();
    l_pdc_cm: number;
    l_um: number;
    n_h: number;
    n_v: number;
    phi1_rad: number;
    pump_nm: number;
    x_um: number;
    y_um: number;
}

/**
 * Joint spectral amplitude modulus and Schmidt decomposition.
 */
export class SpectrumView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Leading Schmidt coefficients.
     */
    readonly coefficients: Float64Array;
    readonly half_span_rad_s: number;
    /**
     * Row-major `|F|` (rows: signal, columns: idler), scaled to a maximum of 1.
     */
    readonly modulus: Float64Array;
    readonly nodes: number;
    readonly schmidt_number: number;
}

export function autoRange(setup: Setup): Float64Array;

export function compensationUm(setup: Setup): number;

export function scan(setup: Setup, start_um: number, stop_um: number, points: number, nodes: number): ScanCurve;

export function schmidtCurve(setup: Setup, offset_um: number, points: number, nodes: number): Float64Array;

export function spectrum(setup: Setup, bandwidth_lobes: number, lobes: number, nodes: number): SpectrumView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_setup_l_pdc_cm: (a: number) => number;
    readonly __wbg_get_setup_l_um: (a: number) => number;
    readonly __wbg_get_setup_n_h: (a: number) => number;
    readonly __wbg_get_setup_n_v: (a: number) => number;
    readonly __wbg_get_setup_phi1_rad: (a: number) => number;
    readonly __wbg_get_setup_pump_nm: (a: number) => number;
    readonly __wbg_get_setup_x_um: (a: number) => number;
    readonly __wbg_get_setup_y_um: (a: number) => number;
    readonly __wbg_scancurve_free: (a: number, b: number) => void;
    readonly __wbg_set_setup_l_pdc_cm: (a: number, b: number) => void;
    readonly __wbg_set_setup_l_um: (a: number, b: number) => void;
    readonly __wbg_set_setup_n_h: (a: number, b: number) => void;
    readonly __wbg_set_setup_n_v: (a: number, b: number) => void;
    readonly __wbg_set_setup_phi1_rad: (a: number, b: number) => void;
    readonly __wbg_set_setup_pump_nm: (a: number, b: number) => void;
    readonly __wbg_set_setup_x_um: (a: number, b: number) => void;
    readonly __wbg_set_setup_y_um: (a: number, b: number) => void;
    readonly __wbg_setup_free: (a: number, b: number) => void;
    readonly __wbg_spectrumview_free: (a: number, b: number) => void;
    readonly autoRange: (a: number) => [number, number, number, number];
    readonly compensationUm: (a: number) => [number, number, number];
    readonly scan: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly scancurve_compensation_um: (a: number) => number;
    readonly scancurve_delta_l_um: (a: number) => [number, number];
    readonly scancurve_dips_um: (a: number) => [number, number];
    readonly scancurve_psi1: (a: number) => [number, number];
    readonly scancurve_psi2: (a: number) => [number, number];
    readonly scancurve_total: (a: number) => [number, number];
    readonly schmidtCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly setup_new: () => number;
    readonly spectrum: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly spectrumview_coefficients: (a: number) => [number, number];
    readonly spectrumview_half_span_rad_s: (a: number) => number;
    readonly spectrumview_modulus: (a: number) => [number, number];
    readonly spectrumview_nodes: (a: number) => number;
    readonly spectrumview_schmidt_number: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
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

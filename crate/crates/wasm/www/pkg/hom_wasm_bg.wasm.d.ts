/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_setup_l_pdc_cm: (a: number) => number;
export const __wbg_get_setup_l_um: (a: number) => number;
export const __wbg_get_setup_n_h: (a: number) => number;
export const __wbg_get_setup_n_v: (a: number) => number;
export const __wbg_get_setup_phi1_rad: (a: number) => number;
export const __wbg_get_setup_pump_nm: (a: number) => number;
export const __wbg_get_setup_x_um: (a: number) => number;
export const __wbg_get_setup_y_um: (a: number) => number;
export const __wbg_scancurve_free: (a: number, b: number) => void;
export const __wbg_set_setup_l_pdc_cm: (a: number, b: number) => void;
export const __wbg_set_setup_l_um: (a: number, b: number) => void;
export const __wbg_set_setup_n_h: (a: number, b: number) => void;
export const __wbg_set_setup_n_v: (a: number, b: number) => void;
export const __wbg_set_setup_phi1_rad: (a: number, b: number) => void;
export const __wbg_set_setup_pump_nm: (a: number, b: number) => void;
export const __wbg_set_setup_x_um: (a: number, b: number) => void;
export const __wbg_set_setup_y_um: (a: number, b: number) => void;
export const __wbg_setup_free: (a: number, b: number) => void;
export const __wbg_spectrumview_free: (a: number, b: number) => void;
export const autoRange: (a: number) => [number, number, number, number];
export const compensationUm: (a: number) => [number, number, number];
export const scan: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const scancurve_compensation_um: (a: number) => number;
export const scancurve_delta_l_um: (a: number) => [number, number];
export const scancurve_dips_um: (a: number) => [number, number];
export const scancurve_psi1: (a: number) => [number, number];
export const scancurve_psi2: (a: number) => [number, number];
export const scancurve_total: (a: number) => [number, number];
export const schmidtCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const setup_new: () => number;
export const spectrum: (a: number, b: number, c: number, d: number) => [number, number, number];
export const spectrumview_coefficients: (a: number) => [number, number];
export const spectrumview_half_span_rad_s: (a: number) => number;
export const spectrumview_modulus: (a: number) => [number, number];
export const spectrumview_nodes: (a: number) => number;
export const spectrumview_schmidt_number: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;

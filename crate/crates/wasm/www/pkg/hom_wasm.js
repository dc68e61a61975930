/* @ts-self-types="./hom_wasm.d.ts" */

/**
 * Coincidence probabilities `p_VV` for the whole state and for its
 * cross-channel and same-channel parts.
 */
export class ScanCurve {
    static __wrap(ptr) {
        const obj = Object.create(ScanCurve.prototype);
        obj.__wbg_ptr = ptr;
        ScanCurveFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ScanCurveFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_scancurve_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get compensation_um() {
        const ret = wasm.scancurve_compensation_um(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    get delta_l_um() {
        const ret = wasm.scancurve_delta_l_um(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Predicted dip positions.
     * @returns {Float64Array}
     */
    get dips_um() {
        const ret = wasm.scancurve_dips_um(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get psi1() {
        const ret = wasm.scancurve_psi1(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get psi2() {
        const ret = wasm.scancurve_psi2(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get total() {
        const ret = wasm.scancurve_total(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) ScanCurve.prototype[Symbol.dispose] = ScanCurve.prototype.free;

/**
 * Circuit parameters shared by the scan and Schmidt operations, in the
 * units of the configuration file.
 */
export class Setup {
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SetupFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_setup_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get l_pdc_cm() {
        const ret = wasm.__wbg_get_setup_l_pdc_cm(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get l_um() {
        const ret = wasm.__wbg_get_setup_l_um(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get n_h() {
        const ret = wasm.__wbg_get_setup_n_h(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get n_v() {
        const ret = wasm.__wbg_get_setup_n_v(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get phi1_rad() {
        const ret = wasm.__wbg_get_setup_phi1_rad(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get pump_nm() {
        const ret = wasm.__wbg_get_setup_pump_nm(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get x_um() {
        const ret = wasm.__wbg_get_setup_x_um(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get y_um() {
        const ret = wasm.__wbg_get_setup_y_um(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set l_pdc_cm(arg0) {
        wasm.__wbg_set_setup_l_pdc_cm(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set l_um(arg0) {
        wasm.__wbg_set_setup_l_um(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set n_h(arg0) {
        wasm.__wbg_set_setup_n_h(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set n_v(arg0) {
        wasm.__wbg_set_setup_n_v(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set phi1_rad(arg0) {
        wasm.__wbg_set_setup_phi1_rad(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set pump_nm(arg0) {
        wasm.__wbg_set_setup_pump_nm(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set x_um(arg0) {
        wasm.__wbg_set_setup_x_um(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set y_um(arg0) {
        wasm.__wbg_set_setup_y_um(this.__wbg_ptr, arg0);
    }
    constructor() {
        const ret = wasm.setup_new();
        this.__wbg_ptr = ret;
        SetupFinalization.register(this, this.__wbg_ptr, this);
        return this;
    }
}
if (Symbol.dispose) Setup.prototype[Symbol.dispose] = Setup.prototype.free;

/**
 * Joint spectral amplitude modulus and Schmidt decomposition.
 */
export class SpectrumView {
    static __wrap(ptr) {
        const obj = Object.create(SpectrumView.prototype);
        obj.__wbg_ptr = ptr;
        SpectrumViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SpectrumViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_spectrumview_free(ptr, 0);
    }
    /**
     * Leading Schmidt coefficients.
     * @returns {Float64Array}
     */
    get coefficients() {
        const ret = wasm.spectrumview_coefficients(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get half_span_rad_s() {
        const ret = wasm.spectrumview_half_span_rad_s(this.__wbg_ptr);
        return ret;
    }
    /**
     * Row-major `|F|` (rows: signal, columns: idler), scaled to a maximum of 1.
     * @returns {Float64Array}
     */
    get modulus() {
        const ret = wasm.spectrumview_modulus(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get nodes() {
        const ret = wasm.spectrumview_nodes(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get schmidt_number() {
        const ret = wasm.spectrumview_schmidt_number(this.__wbg_ptr);
        return ret;
    }
}
if (Symbol.dispose) SpectrumView.prototype[Symbol.dispose] = SpectrumView.prototype.free;

/**
 * @param {Setup} setup
 * @returns {Float64Array}
 */
export function autoRange(setup) {
    _assertClass(setup, Setup);
    const ret = wasm.autoRange(setup.__wbg_ptr);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * @param {Setup} setup
 * @returns {number}
 */
export function compensationUm(setup) {
    _assertClass(setup, Setup);
    const ret = wasm.compensationUm(setup.__wbg_ptr);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ret[0];
}

/**
 * @param {Setup} setup
 * @param {number} start_um
 * @param {number} stop_um
 * @param {number} points
 * @param {number} nodes
 * @returns {ScanCurve}
 */
export function scan(setup, start_um, stop_um, points, nodes) {
    _assertClass(setup, Setup);
    const ret = wasm.scan(setup.__wbg_ptr, start_um, stop_um, points, nodes);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ScanCurve.__wrap(ret[0]);
}

/**
 * @param {Setup} setup
 * @param {number} offset_um
 * @param {number} points
 * @param {number} nodes
 * @returns {Float64Array}
 */
export function schmidtCurve(setup, offset_um, points, nodes) {
    _assertClass(setup, Setup);
    const ret = wasm.schmidtCurve(setup.__wbg_ptr, offset_um, points, nodes);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * @param {Setup} setup
 * @param {number} bandwidth_lobes
 * @param {number} lobes
 * @param {number} nodes
 * @returns {SpectrumView}
 */
export function spectrum(setup, bandwidth_lobes, lobes, nodes) {
    _assertClass(setup, Setup);
    const ret = wasm.spectrum(setup.__wbg_ptr, bandwidth_lobes, lobes, nodes);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return SpectrumView.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./hom_wasm_bg.js": import0,
    };
}

const ScanCurveFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_scancurve_free(ptr, 1));
const SetupFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_setup_free(ptr, 1));
const SpectrumViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_spectrumview_free(ptr, 1));

function _assertClass(instance, klass) {
    if (!(instance instanceof klass)) {
        throw new Error(`expected instance of ${klass.name}`);
    }
}

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('hom_wasm_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };

//! Fixed invocations whose structured output is pinned byte for byte.

pub struct Golden {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub expected: &'static str,
}

macro_rules! golden {
    ($name:literal, [$($arg:literal),* $(,)?]) => {
        Golden {
            name: $name,
            args: &["drw", "--format", "structured", $($arg),*],
            expected: include_str!(concat!("../tests/golden/", $name, ".json")),
        }
    };
}

pub const GOLDEN: &[Golden] = &[
    golden!("normalize_steinberg", ["--p", "2", "--vars", "x", "--level", "2", "normalize", "d[x]*d[1-x]"]),
    golden!("normalize_v_cube", ["--p", "3", "--vars", "x", "--level", "3", "normalize", "V(2*[x]^3)"]),
    golden!("frobenius_dx", ["--p", "3", "--vars", "x,y", "--level", "3", "frobenius", "d[x] + [y]*d[x]"]),
    golden!("verschiebung_laurent", ["--p", "2", "--vars", "x", "--laurent", "x", "--level", "2", "verschiebung", "[x^-1]*dlog(x)"]),
    golden!("differential_v", ["--p", "5", "--vars", "x,y", "--level", "2", "differential", "V([x*y^2])"]),
    golden!("gauss_norm", ["--p", "3", "--vars", "x", "--level", "3", "gauss-norm", "V(V([x]^3))", "--eps", "1/2"]),
    golden!("certificate", ["--p", "2", "--vars", "x", "--laurent", "x", "--level", "3", "certificate", "2*[x]^2 + [x]", "--c1", "1", "--c2", "1"]),
    golden!("geom_inverse", ["--p", "2", "--vars", "x", "--laurent", "x", "--level", "3", "geom-inverse", "dlog(x) + [x]*d[x]", "--r", "1"]),
    golden!("fixed_point", ["--p", "3", "--vars", "x,y", "--laurent", "x,y", "--level", "2", "fixed-point", "dlog(x)*dlog(y)"]),
    golden!("tame_symbol", ["--p", "5", "--vars", "t", "tame-symbol", "{t, 2}", "--place", "t"]),
    golden!("tame_symbol_support", ["--p", "3", "--vars", "t", "tame-symbol", "{t, 1-t} + 2*{t^2+1, t}"]),
    golden!("divisor", ["--p", "3", "--vars", "t", "divisor", "(t^2+1)/(t^3-t)"]),
    golden!("chow_gm", ["--p", "3", "--vars", "t", "chow", "--curve", "Gm", "--codim", "0", "--weight", "1"]),
    golden!("pbf_check", ["--p", "2", "--q-ext", "2", "--vars", "t", "pbf-check"]),
    golden!("chern", ["--p", "3", "--n", "2", "chern", "--twists", "1,4"]),
    golden!("norm_quadratic", ["--p", "3", "--vars", "x", "--laurent", "x", "--level", "2", "norm", "[x*y]*d[y] + d[y]", "--sqrt", "x"]),
    golden!("decompose_constant", ["--p", "2", "--vars", "x", "--level", "2", "decompose", "[theta*x]*d[x] + theta^2*d[x]", "--const-ext", "3"]),
];

//! Reference values computed outside this crate.
//!
//! Every entry was produced by `scripts/reference_constants.py` (mpmath,
//! 40 significant digits); `digits` keeps the printed value to 30 digits.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReferenceConstant {
    pub key: &'static str,
    pub label: &'static str,
    pub digits: &'static str,
    pub value: f64,
    pub provenance: &'static str,
}

const SCRIPT: &str = "scripts/reference_constants.py";

macro_rules! reference {
    ($name:ident, $key:literal, $label:literal, $digits:literal, $value:literal) => {
        pub const $name: ReferenceConstant = ReferenceConstant {
            key: $key,
            label: $label,
            digits: $digits,
            value: $value,
            provenance: SCRIPT,
        };
    };
}

reference!(HALF_PI_STRUVE_H0_1, "half_pi_struve_h0_1", "(π/2)·H₀(1)", "0.893243740975026168343711800626", 0.8932437409750261);
reference!(HALF_PI_J0_1, "half_pi_j0_1", "(π/2)·J₀(1)", "1.2019697153172064991366624463", 1.2019697153172064);
reference!(HALF_PI_STRUVE_L0_1, "half_pi_struve_l0_1", "(π/2)·L₀(1)", "1.11564738760234377955346494686", 1.1156473876023438);
reference!(HALF_PI_I0_1, "half_pi_i0_1", "(π/2)·I₀(1)", "1.98873163025321131862830491633", 1.9887316302532114);
reference!(PI_SQUARED_OVER_8, "pi_squared_over_8", "π²/8", "1.23370055013616982735431137498", 1.2337005501361697);
reference!(PI_SQUARED_OVER_6, "pi_squared_over_6", "π²/6", "1.64493406684822643647241516665", 1.6449340668482264);
reference!(CATALAN, "catalan", "Catalan's constant G", "0.915965594177219015054603514932", 0.915965594177219);
reference!(TWICE_CATALAN, "twice_catalan", "2G", "1.83193118835443803010920702986", 1.831931188354438);
reference!(X_COT_X, "x_cot_x", "∫ sin x·cot(sin x)", "1.29476807003265215306484909529", 1.2947680700326523);
reference!(ARCTAN, "arctan", "∫ arctan(sin x)", "0.84529085018832183660402401994", 0.8452908501883218);
reference!(TAN, "tan", "∫ tan(sin x)", "1.33214098546251799011835209583", 1.332140985462518);
reference!(X_OVER_SIN_X, "x_over_sin_x", "∫ sin x/sin(sin x)", "1.71425545158178964515502226964", 1.7142554515817896);
reference!(X_OVER_SINH_X, "x_over_sinh_x", "∫ sin x/sinh(sin x)", "1.45042658021297155387413962995", 1.4504265802129717);
reference!(SEC, "sec", "∫ sec(sin x)", "2.15115354748126180177967823046", 2.151153547481262);
reference!(SECH, "sech", "∫ sech(sin x)", "1.2700536938052935292404859785", 1.2700536938052935);

pub const ALL: [ReferenceConstant; 15] = [
    HALF_PI_STRUVE_H0_1,
    HALF_PI_J0_1,
    HALF_PI_STRUVE_L0_1,
    HALF_PI_I0_1,
    PI_SQUARED_OVER_8,
    PI_SQUARED_OVER_6,
    CATALAN,
    TWICE_CATALAN,
    X_COT_X,
    ARCTAN,
    TAN,
    X_OVER_SIN_X,
    X_OVER_SINH_X,
    SEC,
    SECH,
];

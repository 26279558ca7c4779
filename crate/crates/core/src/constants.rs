//! Physical constants (CODATA 2018, SI).

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Molar gas constant, J/(mol K).
pub const GAS_CONSTANT: f64 = 8.314_462_618;
/// Molar mass of dry air, kg/mol.
pub const AIR_MOLAR_MASS: f64 = 0.028_964_4;
/// Molar mass of water, kg/mol.
pub const WATER_MOLAR_MASS: f64 = 0.018_015_28;
/// Avogadro constant, 1/mol.
pub const AVOGADRO: f64 = 6.022_140_76e23;
/// Standard gravity, m/s^2.
pub const STANDARD_GRAVITY: f64 = 9.806_65;
/// Density of liquid water, g/m^3.
pub const LIQUID_WATER_DENSITY: f64 = 1.0e6;
/// Volume fraction of O2 in dry air.
pub const OXYGEN_FRACTION: f64 = 0.2095;

/// 10·log10(e): converts a power attenuation coefficient in Np to dB.
pub const DB_PER_NEPER: f64 = 4.342_944_819_032_518;

pub const KM: f64 = 1.0e3;

/// Wavelength in metres of a carrier at `frequency_hz`.
pub fn wavelength(frequency_hz: f64) -> f64 {
    SPEED_OF_LIGHT / frequency_hz
}

/// Frequency in Hz of light with vacuum wavelength `wavelength_m`.
pub fn frequency(wavelength_m: f64) -> f64 {
    SPEED_OF_LIGHT / wavelength_m
}

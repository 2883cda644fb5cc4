"""Frozen high-precision reference values.

Computed once with mpmath at 60 decimal digits and recorded here so the
shipped library never depends on arbitrary precision at runtime. Where an
argument is a float key the reference is the gamma of that exact double;
reciprocal orders are keyed by n since 1/n is not an exact double."""

# mpmath.gamma(x) at the exact double x, 22 significant digits
GAMMA_TABLE = {
    0.05: 19.47008531125551175634,
    0.1: 9.513507698668731285808,
    0.125: 7.533941598797611904699,
    0.2: 4.590843711998802783630,
    0.25: 3.625609908221908311931,
    0.5: 1.772453850905516027298,
    0.75: 1.225416702465177645129,
    1.0: 1.000000000000000000000,
    1.5: 0.8862269254527580136491,
    2.0: 1.000000000000000000000,
    3.7: 4.170651783796604030087,
    5.5: 52.34277778455352018115,
    7.25: 1155.381013919989687203,
    10.0: 362880.0000000000000000,
    13.2: 795120469.0748299599773,
    16.8: 11957431859165.65464421,
    20.0: 121645100408832000.0000,
}

# mpmath.gamma(1/n) at the exact rational 1/n
GAMMA_RECIPROCAL = {
    2: 1.772453850905516027298,
    3: 2.678938534707747633656,
    4: 3.625609908221908311931,
    5: 4.590843711998803053205,
    6: 5.566316001780235204250,
    7: 6.548062940247824437714,
    8: 7.533941598797611904699,
}

# C_n = n * (gamma(1/n)/n)**n
ARCTAN_CONSTANT = {
    2: 1.570796326794896619231,
    3: 2.136218828066188187932,
    4: 2.699879157244692048476,
    5: 3.262740421728616176305,
    6: 3.825171352556823320449,
    7: 4.387343886958574624941,
    8: 4.949349078651646493049,
}

# (gamma(1/n)/n)**n, the all-ones (unit-cube) value
UNIT_CUBE = {
    2: 0.7853981633974483096157,
    3: 0.7120729426887293959772,
    4: 0.6749697893111730121189,
    5: 0.6525480843457232352611,
    6: 0.6375285587594705534082,
    7: 0.6267634124226535178487,
    8: 0.6186686348314558116312,
}

SQRT_PI = 1.772453850905516027298
HALF_SQRT_PI = 0.8862269254527580136491

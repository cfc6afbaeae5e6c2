"""Frozen reference values; regenerate with tests/generate_oracles.py."""

# (family, dim, R1, R2, first concentric eigenvalue)
SIGMA1 = [
    ('euclidean', 3, 1.0, 2.0, 0.5),
    ('euclidean', 2, 1.0, 2.718281828459045, 0.36787944117144236072),
    ('sphere', 2, 0.3, 1.2, 0.710548651806450158),
    ('sphere', 3, 0.2, 1.0, 0.32912198471614373109),
    ('sphere', 5, 0.4, 1.1, 0.25473807468053893657),
    ('rh', 2, 0.5, 1.5, 0.49283869366927193595),
    ('rh', 3, 0.4, 1.3, 0.23560174947213568304),
    ('cp', 2, 0.2, 0.6, 0.54648109414813913076),
    ('cp', 3, 0.1, 0.7, 0.0045914123528133796535),
    ('hh', 2, 0.3, 1.0, 0.00054083026853308468257),
    ('op2', None, 0.2, 0.5, 0.00026541858540998824554),
]

# two-dimensional shells: (family, R1, R2, d, energy N, boundary mass D)
FUNCTIONALS_2D = [
    ('euclidean', 1.0, 2.0, 0.3, 4.2836789970449556355, 6.1797255750071560185),
    ('euclidean', 1.0, 2.0, 0.7, 3.9446341190697027431, 6.8321919620025958623),
    ('sphere', 0.3, 1.2, 0.4, 9.259833285564864569, 13.910102323676702657),
    ('sphere', 0.2, 1.3, 0.9, 11.554398050320368595, 27.963270937404221832),
    ('rh', 0.5, 1.5, 0.6, 5.354909759942371035, 12.70857454651967877),
    ('rh', 0.3, 1.0, 0.2, 6.9736397786584593426, 9.5808945427111562654),
]

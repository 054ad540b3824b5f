"""Commands whose machine-readable output is frozen under fixtures/golden."""

CASES = {
    "classify_gf2_R": ["classify", "gf2.json", "R"],
    "classify_gf2_ID": ["classify", "gf2.json", "ID"],
    "classify_qq_SPAN": ["classify", "qq.json", "SPAN"],
    "classify_qq_PROJ": ["classify", "qq.json", "PROJ"],
    "decompose_gf2_R": ["decompose", "gf2.json", "R"],
    "decompose_gf2_ID": ["decompose", "gf2.json", "ID"],
    "decompose_gf2_PAIR_pair": ["decompose", "gf2.json", "PAIR", "--mode", "pair"],
    "decompose_gf3_R_pair": ["decompose", "gf3.json", "R", "--mode", "pair"],
    "decompose_qq_SUB": ["decompose", "qq.json", "SUB"],
    "subspaces_gf2_I2_E1": ["subspaces", "gf2.json", "I2", "E1"],
    "subspaces_gf2_I2_I2": ["subspaces", "gf2.json", "I2", "I2"],
    "subspaces_gf3_A_B": ["subspaces", "gf3.json", "A", "B"],
    "inverse_qq_M": ["inverse", "qq.json", "M"],
    "inverse_gf2_SQ": ["inverse", "gf2.json", "SQ"],
}

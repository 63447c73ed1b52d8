"""Regenerate the bundled saturation tables.

Uses CoolProp, whose reference equations of state are the same ones behind the
NIST webbook saturation tables. Not needed at runtime.

    pip install CoolProp
    python scripts/make_fixtures.py
"""
from pathlib import Path

import CoolProp.CoolProp as CP

FLUIDS = {
    # file stem: (CoolProp name, display name, T range in C)
    "co2": ("CO2", "CO2", (-40, 30)),
    "r12": ("R12", "R-12", (-40, 40)),
    "r134a": ("R134a", "R-134a", (-40, 40)),
    "r290": ("Propane", "R-290", (-40, 40)),
}
OUT = Path(__file__).resolve().parents[1] / "src" / "co2dryout" / "data"


def saturation_row(fluid, t_c):
    T = t_c + 273.15

    def sat(key, quality):
        return CP.PropsSI(key, "T", T, "Q", quality, fluid)

    h_gl = sat("H", 1) - sat("H", 0)
    return (t_c, sat("D", 0), sat("D", 1), sat("V", 0), sat("V", 1),
            sat("I", 0), h_gl, sat("P", 0))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for stem, (fluid, name, (t0, t1)) in FLUIDS.items():
        p_crit = CP.PropsSI("Pcrit", fluid)
        lines = ["T_sat_C,rho_l,rho_v,mu_l,mu_v,sigma,h_gl,p_sat",
                 f"# p_crit={p_crit:.6g} fluid={name}"]
        for t_c in range(t0, t1 + 1):
            row = saturation_row(fluid, t_c)
            lines.append(",".join([f"{row[0]:g}"] + [f"{v:.8g}" for v in row[1:]]))
        (OUT / f"{stem}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {stem}.csv ({t1 - t0 + 1} rows)")


if __name__ == "__main__":
    main()

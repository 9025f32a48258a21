#!/usr/bin/env python3
"""Generate the bundled demo dataset: data/cars.csv.

250 cars, 9 attributes, deterministic (seeded). The data is synthetic but
shaped like the classic cars tables: cylinder classes have non-overlapping
displacement bands and mostly separated horsepower/weight bands, origins
have distinct flavor, and a handful of horsepower cells are missing.

A few facts the demo flows rely on are pinned explicitly:
  * Origin has exactly three values (Japan, Europe, USA).
  * Exactly four Japanese cars have horsepower >= 105 (one 4-cylinder
    Mazda MX-5 and three 6-cylinder coupes); two more sit at 93/95 so a
    range filter has something to fine-tune; every other Japanese car
    stays below 91.
  * Mean MPG per cylinder class is strictly decreasing in cylinders, so
    the 4-cylinder bar is the tallest.

Run from the repo root:  python tools/gen_cars_dataset.py
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

SEED = 20240817
OUT = Path(__file__).resolve().parent.parent / "data" / "cars.csv"

HEADERS = [
    "Name",
    "Miles per Gallon",
    "Cylinders",
    "Displacement",
    "Horsepower",
    "Weight",
    "Acceleration",
    "Model Year",
    "Origin",
]

MAKES = {
    "Japan": ["Toyota", "Honda", "Datsun", "Mazda", "Subaru", "Nissan"],
    "Europe": ["Volkswagen", "Peugeot", "Fiat", "Volvo", "Audi", "Renault", "Saab"],
    "USA": ["Ford", "Chevrolet", "Plymouth", "Dodge", "AMC", "Buick", "Pontiac", "Mercury"],
}

MODELS = [
    "Custom", "Deluxe", "GL", "GT", "LE", "SE", "Sport", "Wagon", "Sedan",
    "Coupe", "Brougham", "Classic", "Special", "Royale", "Mark", "Turbo",
]

# per cylinder class: (mpg band, displacement band, horsepower band, weight band)
CLASS_BANDS = {
    3: ((18.0, 23.5), (70, 80), (90, 110), (2100, 2550)),
    4: ((24.0, 39.0), (79, 156), (52, 96), (1650, 2700)),
    5: ((20.0, 27.0), (131, 183), (77, 103), (2800, 3200)),
    6: ((16.0, 23.0), (160, 262), (85, 133), (2900, 3700)),
    8: ((9.0, 17.5), (262, 455), (130, 230), (3500, 5140)),
}

# (cylinders, count) per origin; totals 250
PLAN = {
    "Japan": [(3, 4), (4, 58), (6, 8)],
    "Europe": [(4, 48), (5, 6), (6, 6)],
    "USA": [(4, 28), (6, 44), (8, 48)],
}

# Japanese high-horsepower finalists (the only Japanese cars at HP >= 93)
FINALISTS = [
    ("Mazda MX-5", 4, 130, 25.0),
    ("Nissan 300ZX", 6, 132, 21.0),
    ("Toyota Supra", 6, 125, 20.5),
    ("Honda Legend Coupe", 6, 118, 21.5),
]
NEAR_MISSES = [("Datsun 810 Maxima", 6, 93, 19.5), ("Toyota Cressida", 6, 95, 19.0)]


def main() -> None:
    rng = random.Random(SEED)
    rows: list[list] = []
    used_names: set[str] = set()

    def fresh_name(origin: str) -> str:
        while True:
            name = f"{rng.choice(MAKES[origin])} {rng.choice(MODELS)} {rng.randint(100, 2500)}"
            if name not in used_names:
                used_names.add(name)
                return name

    def emit(origin: str, cyl: int, name=None, hp=None, mpg=None):
        mpg_band, disp_band, hp_band, weight_band = CLASS_BANDS[cyl]
        mpg_v = mpg if mpg is not None else round(rng.uniform(*mpg_band), 1)
        hp_v = hp if hp is not None else rng.randint(*hp_band)
        rows.append(
            [
                name or fresh_name(origin),
                mpg_v,
                cyl,
                rng.randint(*disp_band),
                hp_v,
                rng.randint(*weight_band),
                round(rng.uniform(9.0, 22.0), 1),
                rng.randint(70, 82),
                origin,
            ]
        )

    for name, cyl, hp, mpg in FINALISTS:
        emit("Japan", cyl, name=name, hp=hp, mpg=mpg)
    for name, cyl, hp, mpg in NEAR_MISSES:
        emit("Japan", cyl, name=name, hp=hp, mpg=mpg)

    finalist_counts = {4: 1, 6: 5}  # finalists + near misses already emitted
    for origin, plan in PLAN.items():
        for cyl, count in plan:
            if origin == "Japan":
                count -= finalist_counts.get(cyl, 0)
            for _ in range(count):
                if origin == "Japan":
                    # keep the rest of the Japanese fleet below the finalists
                    hp_band = CLASS_BANDS[cyl][2]
                    emit(origin, cyl, hp=rng.randint(hp_band[0], min(90, hp_band[1])))
                else:
                    emit(origin, cyl)

    assert len(rows) == 250, len(rows)

    # a few missing horsepower cells, American 8-cylinder cars only
    candidates = [
        i for i, r in enumerate(rows) if r[8] == "USA" and r[2] == 8
    ]
    for i in rng.sample(candidates, 3):
        rows[i][4] = "NA"

    rng.shuffle(rows)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with OUT.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(HEADERS)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()

"""Random case sheets shaped like the Karnataka data, for scale testing."""

from __future__ import annotations

import csv
import io
import random
from datetime import date, timedelta

from .mapping import CASE_SHEET_HEADERS

CITIES = [
    ("Bangalore-Urban", "Karnataka"), ("Bangalore-Rural", "Karnataka"), ("Kalburgi", "Karnataka"),
    ("Mysuru", "Karnataka"), ("Dakshina Kannada", "Karnataka"), ("Udupi", "Karnataka"),
    ("Belagavi", "Karnataka"), ("Ballari", "Karnataka"), ("Dharwad", "Karnataka"),
    ("Bidar", "Karnataka"), ("Mandya", "Karnataka"), ("Hassan", "Karnataka"),
]
ORIGINS = ["USA", "Middle East/Saudi Arabia", "Dubai", "United Kingdom/London", "Maharashtra", "Delhi"]
KIN = ["Spouse", "Daughter", "Son", "Co-worker", "Roommate", "Mother", "Father", "Contact"]
OPAQUE = ["ILI", "SARI", "Containment zone", "Under investigation"]
STATUS = ["Recovered"] * 6 + ["Hospitalized"] * 3 + ["Deceased"]


def generate_case_sheet(rows: int, seed: int = 0) -> str:
    """CSV text with a header and ``rows`` cases numbered 1..rows."""
    rng = random.Random(seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([h.title() if len(h) > 1 else h.upper() for h in CASE_SHEET_HEADERS])
    start = date(2020, 3, 9)
    for case in range(1, rows + 1):
        day = start + timedelta(days=min(115, case * 115 // max(rows, 1)))
        diagnosed = "1900-01-01T" if rng.random() < 0.02 else f"{day.isoformat()}T"
        age = "0" if rng.random() < 0.03 else str(rng.randint(1, 95))
        gender = rng.choice(["Male", "Female", "Male", "Female", ""])
        city, state = rng.choice(CITIES)
        cluster, reason, parent = "", "", 0
        roll = rng.random()
        if roll < 0.15:
            cluster = "From " + rng.choice(ORIGINS)
        elif roll < 0.6 and case > 1:
            reason = rng.choice(KIN)
            parent = rng.randint(max(1, case - 200), case - 1)
        elif roll < 0.8:
            reason = rng.choice(OPAQUE)
        status = rng.choice(STATUS)
        secondary = rng.choice([0, 0, 0, 1, 2, 5])
        writer.writerow([case, diagnosed, age, gender, city, state, cluster, reason, "India",
                         status, parent, secondary, ""])
    return buf.getvalue()

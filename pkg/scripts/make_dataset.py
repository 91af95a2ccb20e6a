"""Generate the bundled synthetic symptom-disease survey file.

The output mimics a symptom survey: one case per row, disease first, then
up to k symptom columns (human-readable names; the parser normalizes them).
Every case is sampled from a hand-written disease profile:

  anchors   near-always symptoms of the disease
  distinct  the few symptoms that tell a disease from its look-alike twin
  variants  alternative presentations; one is chosen per case
  extras    occasional accompanying symptoms

Look-alike twins ("pattern pairs", e.g. malaria/typhoid here) share anchors
and extras and have the same per-symptom frequencies in their variants; the
variants differ only in which symptoms occur together. That makes the pair
nearly indistinguishable for a per-symptom-independence model while
instance- and tree-based models can still read the combinations, mirroring
how the classifiers separate on real survey data. The `swap` knob makes a
case present with its twin's combination (irreducible confusion), and
`noise` sprinkles unrelated symptoms.

The content is synthetic and NOT clinical guidance.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
from dataclasses import dataclass, field

# ---------------------------------------------------------------------------
# vocabulary (130 symptoms, human-readable survey spellings)

SYMPTOMS = [
    "itching", "skin rash", "nodal skin eruptions", "continuous sneezing",
    "shivering", "chills", "joint pain", "stomach pain", "acidity",
    "ulcers on tongue", "muscle wasting", "vomiting", "burning micturition",
    "spotting urination", "fatigue", "weight gain", "anxiety",
    "cold hands and feet", "mood swings", "weight loss", "restlessness",
    "lethargy", "patches in throat", "irregular sugar level", "cough",
    "high fever", "sunken eyes", "breathlessness", "sweating", "dehydration",
    "indigestion", "headache", "yellowish skin", "dark urine", "nausea",
    "loss of appetite", "pain behind the eyes", "back pain", "constipation",
    "abdominal pain", "diarrhoea", "mild fever", "yellow urine",
    "yellowing of eyes", "acute liver failure", "fluid overload",
    "swelling of stomach", "swelled lymph nodes", "malaise",
    "blurred and distorted vision", "phlegm", "throat irritation",
    "redness of eyes", "sinus pressure", "runny nose", "congestion",
    "chest pain", "weakness in limbs", "fast heart rate",
    "pain during bowel movements", "pain in anal region", "bloody stool",
    "irritation in anus", "neck pain", "dizziness", "cramps", "bruising",
    "obesity", "swollen legs", "swollen blood vessels",
    "puffy face and eyes", "enlarged thyroid", "brittle nails",
    "swollen extremities", "excessive hunger", "night sweats",
    "drying and tingling lips", "slurred speech", "knee pain",
    "hip joint pain", "muscle weakness", "stiff neck", "swelling joints",
    "movement stiffness", "spinning movements", "loss of balance",
    "unsteadiness", "weakness of one body side", "loss of smell",
    "bladder discomfort", "foul smell of urine", "continuous feel of urine",
    "passage of gases", "internal itching", "typhos", "depression",
    "irritability", "muscle pain", "altered sensorium",
    "red spots over body", "belly pain", "abnormal menstruation",
    "dischromic patches", "watering from eyes", "increased appetite",
    "polyuria", "mucoid sputum", "rusty sputum", "lack of concentration",
    "visual disturbances", "blood transfusion history",
    "unsterile injection history", "coma", "stomach bleeding",
    "distention of abdomen", "alcohol consumption history", "fluid retention",
    "blood in sputum", "prominent veins on calf", "palpitations",
    "painful walking", "pus filled pimples", "blackheads", "scarring",
    "skin peeling", "silver like dusting", "small dents in nails",
    "inflammatory nails", "blister", "red sore around nose",
    "yellow crust ooze", "tremor",
]

# ---------------------------------------------------------------------------
# disease profiles


@dataclass
class Profile:
    anchors: list[str]
    distinct: list[str] = field(default_factory=list)
    variants: list[list[str]] = field(default_factory=list)
    extras: list[str] = field(default_factory=list)
    pattern_pair: str | None = None  # look-alike twin for the swap knob


PROFILES: dict[str, Profile] = {
    "Fungal infection": Profile(
        anchors=["itching", "skin rash", "nodal skin eruptions"],
        extras=["dischromic patches", "internal itching"],
    ),
    # -- look-alike twins: common cold / allergy ---------------------------
    "Allergy": Profile(
        anchors=["continuous sneezing", "watering from eyes"],
        distinct=["shivering"],
        variants=[
            ["runny nose", "redness of eyes", "throat irritation"],
            ["congestion", "sinus pressure", "loss of smell"],
        ],
        extras=["headache", "malaise", "itching"],
        pattern_pair="Common cold",
    ),
    "Common cold": Profile(
        anchors=["continuous sneezing", "watering from eyes"],
        distinct=["mild fever"],
        variants=[
            ["runny nose", "redness of eyes", "loss of smell"],
            ["congestion", "sinus pressure", "throat irritation"],
        ],
        extras=["headache", "malaise", "itching"],
        pattern_pair="Allergy",
    ),
    "GERD": Profile(
        anchors=["acidity", "indigestion"],
        extras=["stomach pain", "ulcers on tongue", "vomiting", "cough",
                "chest pain"],
    ),
    "Chronic cholestasis": Profile(
        anchors=["yellowish skin", "itching", "dark urine"],
        extras=["nausea", "loss of appetite", "abdominal pain",
                "yellowing of eyes"],
    ),
    "Drug reaction": Profile(
        anchors=["skin rash", "itching"],
        extras=["stomach pain", "burning micturition", "spotting urination",
                "red spots over body"],
    ),
    "Peptic ulcer disease": Profile(
        anchors=["stomach pain", "indigestion"],
        extras=["vomiting", "loss of appetite", "passage of gases",
                "internal itching", "abdominal pain"],
    ),
    "AIDS": Profile(
        anchors=["muscle wasting", "patches in throat", "high fever"],
        extras=["swelled lymph nodes", "night sweats", "weight loss",
                "fatigue"],
    ),
    "Diabetes": Profile(
        anchors=["irregular sugar level", "polyuria", "excessive hunger"],
        extras=["weight loss", "fatigue", "restlessness", "lethargy",
                "blurred and distorted vision", "increased appetite"],
    ),
    "Gastroenteritis": Profile(
        anchors=["vomiting", "diarrhoea"],
        extras=["sunken eyes", "dehydration", "stomach pain", "mild fever"],
    ),
    "Bronchial asthma": Profile(
        anchors=["breathlessness", "cough"],
        extras=["fatigue", "high fever", "mucoid sputum", "chest pain"],
    ),
    # -- look-alike twins: migraine / vertigo ------------------------------
    "Migraine": Profile(
        anchors=["headache", "nausea"],
        distinct=["pain behind the eyes"],
        variants=[
            ["visual disturbances", "blurred and distorted vision",
             "irritability"],
            ["lack of concentration", "depression", "dizziness"],
        ],
        extras=["vomiting", "stiff neck"],
        pattern_pair="Vertigo",
    ),
    "Vertigo": Profile(
        anchors=["headache", "nausea"],
        distinct=["spinning movements", "unsteadiness"],
        variants=[
            ["visual disturbances", "blurred and distorted vision",
             "dizziness"],
            ["lack of concentration", "depression", "irritability"],
        ],
        extras=["vomiting", "loss of balance"],
        pattern_pair="Migraine",
    ),
    "Hypertension": Profile(
        anchors=["headache", "chest pain", "dizziness"],
        extras=["lack of concentration", "loss of balance", "palpitations",
                "obesity", "mood swings"],
    ),
    "Cervical spondylosis": Profile(
        anchors=["neck pain", "back pain"],
        extras=["weakness in limbs", "dizziness", "loss of balance"],
    ),
    "Brain hemorrhage": Profile(
        anchors=["weakness of one body side", "altered sensorium"],
        extras=["vomiting", "headache", "slurred speech", "coma"],
    ),
    "Jaundice": Profile(
        anchors=["yellowish skin", "yellowing of eyes", "dark urine"],
        extras=["itching", "vomiting", "fatigue", "weight loss",
                "high fever", "abdominal pain"],
    ),
    # -- look-alike twins: malaria / typhoid -------------------------------
    "Malaria": Profile(
        anchors=["high fever", "headache"],
        distinct=["chills"],
        variants=[
            ["sweating", "nausea", "muscle pain"],
            ["vomiting", "diarrhoea", "shivering"],
        ],
        extras=["fatigue", "loss of appetite"],
        pattern_pair="Typhoid",
    ),
    "Typhoid": Profile(
        anchors=["high fever", "headache"],
        distinct=["typhos"],
        variants=[
            ["sweating", "nausea", "shivering"],
            ["vomiting", "diarrhoea", "muscle pain"],
        ],
        extras=["fatigue", "loss of appetite"],
        pattern_pair="Malaria",
    ),
    # -- look-alike twins: chicken pox / dengue ----------------------------
    "Chicken pox": Profile(
        anchors=["skin rash", "mild fever"],
        distinct=["blister", "itching"],
        variants=[
            ["red spots over body", "lethargy", "headache"],
            ["loss of appetite", "malaise", "swelled lymph nodes"],
        ],
        extras=["fatigue"],
        pattern_pair="Dengue",
    ),
    "Dengue": Profile(
        anchors=["skin rash", "mild fever"],
        distinct=["joint pain", "pain behind the eyes"],
        variants=[
            ["red spots over body", "lethargy", "swelled lymph nodes"],
            ["loss of appetite", "malaise", "headache"],
        ],
        extras=["fatigue"],
        pattern_pair="Chicken pox",
    ),
    # -- look-alike twins: hepatitis b / hepatitis c -----------------------
    "Hepatitis B": Profile(
        anchors=["yellowish skin", "lethargy"],
        distinct=["itching"],
        variants=[
            ["blood transfusion history", "dark urine", "malaise"],
            ["unsterile injection history", "yellow urine", "fatigue"],
        ],
        extras=["abdominal pain", "loss of appetite"],
        pattern_pair="Hepatitis C",
    ),
    "Hepatitis C": Profile(
        anchors=["yellowish skin", "lethargy"],
        distinct=["nausea"],
        variants=[
            ["blood transfusion history", "dark urine", "fatigue"],
            ["unsterile injection history", "yellow urine", "malaise"],
        ],
        extras=["abdominal pain", "loss of appetite"],
        pattern_pair="Hepatitis B",
    ),
    # -- look-alike twins: hepatitis a / hepatitis e -----------------------
    "Hepatitis A": Profile(
        anchors=["yellowish skin", "loss of appetite"],
        distinct=["joint pain"],
        variants=[
            ["dark urine", "vomiting", "mild fever"],
            ["nausea", "diarrhoea", "muscle pain"],
        ],
        extras=["yellowing of eyes", "abdominal pain"],
        pattern_pair="Hepatitis E",
    ),
    "Hepatitis E": Profile(
        anchors=["yellowish skin", "loss of appetite"],
        distinct=["high fever"],
        variants=[
            ["dark urine", "vomiting", "muscle pain"],
            ["nausea", "diarrhoea", "mild fever"],
        ],
        extras=["yellowing of eyes", "abdominal pain"],
        pattern_pair="Hepatitis A",
    ),
    # -- look-alike twins: hepatitis d / alcoholic hepatitis ---------------
    "Hepatitis D": Profile(
        anchors=["yellowish skin", "abdominal pain"],
        distinct=["joint pain", "dark urine"],
        variants=[
            ["acute liver failure", "swelling of stomach", "nausea"],
            ["distention of abdomen", "fluid retention", "vomiting"],
        ],
        extras=["yellowing of eyes", "fatigue"],
        pattern_pair="Alcoholic hepatitis",
    ),
    "Alcoholic hepatitis": Profile(
        anchors=["yellowish skin", "abdominal pain"],
        distinct=["alcohol consumption history"],
        variants=[
            ["acute liver failure", "swelling of stomach", "vomiting"],
            ["distention of abdomen", "fluid retention", "nausea"],
        ],
        extras=["stomach bleeding", "fatigue"],
        pattern_pair="Hepatitis D",
    ),
    "Tuberculosis": Profile(
        anchors=["cough", "blood in sputum", "night sweats"],
        extras=["chills", "weight loss", "fatigue", "mild fever",
                "swelled lymph nodes", "chest pain", "phlegm"],
    ),
    "Pneumonia": Profile(
        anchors=["cough", "high fever", "breathlessness"],
        extras=["chills", "sweating", "rusty sputum", "chest pain",
                "fast heart rate", "phlegm"],
    ),
    "Hemorrhoids": Profile(
        anchors=["pain during bowel movements", "pain in anal region"],
        extras=["bloody stool", "irritation in anus", "constipation"],
    ),
    "Heart attack": Profile(
        anchors=["chest pain", "sweating", "breathlessness"],
        extras=["vomiting", "fast heart rate", "anxiety"],
    ),
    "Varicose veins": Profile(
        anchors=["swollen legs", "prominent veins on calf"],
        extras=["fatigue", "cramps", "bruising", "swollen blood vessels",
                "painful walking"],
    ),
    "Hypothyroidism": Profile(
        anchors=["enlarged thyroid", "weight gain", "cold hands and feet"],
        extras=["lethargy", "dizziness", "puffy face and eyes",
                "brittle nails", "swollen extremities", "depression",
                "abnormal menstruation"],
    ),
    "Hyperthyroidism": Profile(
        anchors=["enlarged thyroid", "weight loss", "fast heart rate"],
        extras=["excessive hunger", "muscle weakness", "irritability",
                "sweating", "tremor", "restlessness"],
    ),
    "Hypoglycemia": Profile(
        anchors=["sweating", "shivering", "drying and tingling lips"],
        extras=["anxiety", "slurred speech", "vomiting", "palpitations",
                "irritability", "blurred and distorted vision"],
    ),
    # -- look-alike twins: osteoarthritis / arthritis ----------------------
    "Osteoarthritis": Profile(
        anchors=["joint pain", "knee pain"],
        distinct=["hip joint pain"],
        variants=[
            ["swelling joints", "painful walking", "back pain"],
            ["movement stiffness", "muscle weakness", "neck pain"],
        ],
        extras=["fatigue"],
        pattern_pair="Arthritis",
    ),
    "Arthritis": Profile(
        anchors=["joint pain", "knee pain"],
        distinct=["stiff neck"],
        variants=[
            ["swelling joints", "painful walking", "neck pain"],
            ["movement stiffness", "muscle weakness", "back pain"],
        ],
        extras=["fatigue"],
        pattern_pair="Osteoarthritis",
    ),
    "Acne": Profile(
        anchors=["pus filled pimples", "blackheads"],
        extras=["skin rash", "scarring"],
    ),
    "Urinary tract infection": Profile(
        anchors=["burning micturition", "bladder discomfort"],
        extras=["foul smell of urine", "continuous feel of urine",
                "mild fever"],
    ),
    "Psoriasis": Profile(
        anchors=["skin peeling", "silver like dusting"],
        extras=["skin rash", "joint pain", "small dents in nails",
                "inflammatory nails"],
    ),
    "Impetigo": Profile(
        anchors=["red sore around nose", "yellow crust ooze"],
        extras=["skin rash", "blister", "high fever"],
    ),
}

# generation knobs, frozen after tuning against the evaluation protocol
P_ANCHOR = 0.85
P_DISTINCT = 0.30
P_VARIANT = 0.85
P_EXTRA = 0.42
P_SWAP = 0.05
NOISE_MAX = 3  # up to this many unrelated symptoms per case


def _sample_case(rng: random.Random, disease: str, profile: Profile) -> list[str]:
    chosen: list[str] = []

    def add(symptom: str) -> None:
        if symptom not in chosen:
            chosen.append(symptom)

    for s in profile.anchors:
        if rng.random() < P_ANCHOR:
            add(s)
    for s in profile.distinct:
        if rng.random() < P_DISTINCT:
            add(s)
    variants = profile.variants
    if profile.pattern_pair and rng.random() < P_SWAP:
        variants = PROFILES[profile.pattern_pair].variants or variants
    if variants:
        for s in variants[rng.randrange(len(variants))]:
            if rng.random() < P_VARIANT:
                add(s)
    for s in profile.extras:
        if rng.random() < P_EXTRA:
            add(s)
    for _ in range(rng.randrange(0, NOISE_MAX + 1)):
        add(SYMPTOMS[rng.randrange(len(SYMPTOMS))])
    if not chosen:
        chosen.append(profile.anchors[0])
    return chosen


def generate_rows(seed: int, per_class: int, extra_rows: int) -> list[tuple[str, list[str]]]:
    known = set(SYMPTOMS)
    for disease, profile in PROFILES.items():
        listed = profile.anchors + profile.distinct + profile.extras
        listed += [s for v in profile.variants for s in v]
        unknown = [s for s in listed if s not in known]
        assert not unknown, f"{disease}: unknown symptoms {unknown}"
        assert profile.pattern_pair is None or profile.pattern_pair in PROFILES

    rng = random.Random(seed)
    diseases = list(PROFILES)
    rows: list[tuple[str, list[str]]] = []
    for disease in diseases:
        for _ in range(per_class):
            rows.append((disease, _sample_case(rng, disease, PROFILES[disease])))
    for i in range(extra_rows):
        disease = diseases[i % len(diseases)]
        rows.append((disease, _sample_case(rng, disease, PROFILES[disease])))
    rng.shuffle(rows)
    return rows


def to_csv(rows: list[tuple[str, list[str]]]) -> str:
    width = max(len(symptoms) for _, symptoms in rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["disease"] + [f"symptom_{i + 1}" for i in range(width)])
    for disease, symptoms in rows:
        writer.writerow([disease] + symptoms + [""] * (width - len(symptoms)))
    return buf.getvalue()


def main() -> None:
    parser = argparse.ArgumentParser(description="generate the bundled dataset")
    parser.add_argument("--seed", type=int, default=20240611)
    parser.add_argument("--per-class", type=int, default=120)
    parser.add_argument("--extra-rows", type=int, default=1)
    parser.add_argument("--out", default="src/sympredict/data/symptom_cases.csv")
    args = parser.parse_args()

    rows = generate_rows(args.seed, args.per_class, args.extra_rows)
    text = to_csv(rows)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()

"""Regenerate the per-script character class tables in src/abugida/data/.

Classes come from Unicode general categories and character names, with a
small override table per script for letters whose category does not match
their orthographic role. Run from the repository root:

    python3 tools/gen_profiles.py
"""

import unicodedata
from pathlib import Path

BLOCKS = {
    "bengali": (0x0980, 0x09FF),
    "hindi": (0x0900, 0x097F),
    "khmer": (0x1780, 0x17FF),
    "lao": (0x0E80, 0x0EFF),
    "myanmar": (0x1000, 0x109F),
    "thai": (0x0E00, 0x0E7F),
}

# Letter-name suffixes that denote independent vowels in Brahmic blocks.
INDIC_VOWEL_NAMES = {
    "A", "AA", "I", "II", "U", "UU", "E", "AI", "O", "AU", "EE", "OO",
    "VOCALIC R", "VOCALIC RR", "VOCALIC L", "VOCALIC LL",
    "CANDRA A", "CANDRA E", "CANDRA O", "SHORT A", "SHORT E", "SHORT O",
    "OE", "OOE", "AW", "UE", "UUE", "SHAN A", "MON E",
}

OVERRIDES = {
    "bengali": {
        0x09BD: "Other",  # avagraha
        0x09FC: "Diacritic",  # vedic anusvara
    },
    "hindi": {
        0x093D: "Other",  # avagraha
        0x0950: "Other",  # om
    },
    "khmer": {
        0x17A3: "IndependentVowel",
        0x17A4: "IndependentVowel",
        0x17DC: "Other",
    },
    "lao": {
        0x0EAD: "Consonant",  # o, vowel carrier
        0x0EAF: "Other",  # ellipsis
        0x0EDC: "Consonant",
        0x0EDD: "Consonant",
        0x0EB0: "DependentVowelSign",
        0x0EB2: "DependentVowelSign",
        0x0EB3: "DependentVowelSign",
        0x0EBD: "Diacritic",  # semivowel nyo
        0x0ECD: "DependentVowelSign",  # niggahita, written vowel -o
    },
    "myanmar": {
        0x1021: "Consonant",  # a, vowel carrier
    },
    "thai": {
        0x0E24: "IndependentVowel",  # ru
        0x0E26: "IndependentVowel",  # lu
        0x0E2F: "Other",  # paiyannoi
        0x0E45: "DependentVowelSign",  # lakkhangyao
        0x0E47: "Diacritic",  # maitaikhu
        **{cp: "DependentVowelSign" for cp in range(0x0E30, 0x0E3A)},
        **{cp: "DependentVowelSign" for cp in range(0x0E40, 0x0E45)},
    },
}


def default_class(cp: int) -> str | None:
    ch = chr(cp)
    cat = unicodedata.category(ch)
    name = unicodedata.name(ch, "")
    if not name:
        return None
    if cat == "Nd":
        return "Digit"
    if cat in ("Mn", "Mc"):
        if "VOWEL SIGN" in name:
            return "DependentVowelSign"
        return "Diacritic"
    if cat == "Lo":
        if "INDEPENDENT VOWEL" in name:
            return "IndependentVowel"
        if "VOWEL SIGN" in name:
            return "DependentVowelSign"
        if " LETTER " in name or " CHARACTER " in name:
            tail = name.split(" LETTER ", 1)[-1] if " LETTER " in name else None
            if tail in INDIC_VOWEL_NAMES:
                return "IndependentVowel"
            return "Consonant"
    return "Other"


def main() -> None:
    out_dir = Path(__file__).resolve().parent.parent / "src" / "abugida" / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    for script, (lo, hi) in BLOCKS.items():
        lines = []
        for cp in range(lo, hi + 1):
            cls = OVERRIDES[script].get(cp) or default_class(cp)
            if cls is None or cls == "Other":
                continue
            lines.append(f"{cp:04X}\t{cls}\n")
        header = f"# {script} U+{lo:04X}-U+{hi:04X} (Unicode {unicodedata.unidata_version})\n"
        (out_dir / f"{script}.tsv").write_text(header + "".join(lines), encoding="utf-8")
        print(script, len(lines))


if __name__ == "__main__":
    main()

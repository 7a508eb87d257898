#!/usr/bin/env python3
"""Export the Brown corpus from NLTK as tagged text plus a manifest.

Writes one file per corpus sample (one sentence per line, tokens as
surface/TAG) and a manifest.tsv naming each file, its doc id, and its
category code.  Point GENRE_BROWN_MANIFEST at the manifest to enable the
corpus checks in the acceptance runner, or pass it to `genre train`.
"""

import argparse
import sys
from pathlib import Path


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="brown_export", help="output directory")
    args = parser.parse_args()

    try:
        import nltk
        from nltk.corpus import brown
    except ImportError:
        print("this script needs the nltk package: pip install nltk", file=sys.stderr)
        return 1

    try:
        brown.fileids()
    except LookupError:
        nltk.download("brown")

    out = Path(args.out)
    files = out / "files"
    files.mkdir(parents=True, exist_ok=True)

    manifest_lines = []
    for fileid in sorted(brown.fileids()):
        category = fileid[1].upper()
        lines = [" ".join(f"{word}/{tag}" for word, tag in sent)
                 for sent in brown.tagged_sents(fileid)]
        (files / f"{fileid}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
        manifest_lines.append(f"files/{fileid}.txt\t{fileid}\t{category}")

    (out / "manifest.tsv").write_text("\n".join(manifest_lines) + "\n", encoding="utf-8")
    print(f"wrote {len(manifest_lines)} documents under {out}")
    print(f"manifest: {out / 'manifest.tsv'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

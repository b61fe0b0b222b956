#!/usr/bin/env python3
"""Builds the desk-scale corpus: the English NewsArticles sample shipped in the
tmtoolkit 0.12.0 wheel, cleaned the way text8 was (lowercase a-z runs, single
spaces, one line)."""
import argparse
import csv
import io
import pathlib
import re
import subprocess
import sys
import tempfile
import zipfile

WHEEL = "tmtoolkit==0.12.0"
MEMBER = "tmtoolkit/data/en/NewsArticles.zip"


def find_wheel(path, workdir):
    if path:
        return pathlib.Path(path)
    subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "--timeout", "120",
                    WHEEL, "-d", workdir], check=True)
    return next(pathlib.Path(workdir).glob("tmtoolkit-*.whl"))


def documents(wheel):
    with zipfile.ZipFile(wheel) as whl:
        inner = zipfile.ZipFile(io.BytesIO(whl.read(MEMBER)))
    for name in sorted(inner.namelist()):
        if not name.endswith(".csv"):
            continue
        text = inner.read(name).decode("utf-8")
        csv.field_size_limit(1 << 30)
        for row in csv.DictReader(io.StringIO(text)):
            yield " ".join(row.get(k) or "" for k in ("title", "subtitle", "text"))


def clean(text):
    return re.sub(r"[^a-z]+", " ", text.lower()).split()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--wheel", help="local tmtoolkit wheel (skips the download)")
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "news_text8.txt"))
    args = ap.parse_args()
    with tempfile.TemporaryDirectory() as tmp:
        wheel = find_wheel(args.wheel, tmp)
        tokens = [t for doc in documents(wheel) for t in clean(doc)]
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(" ".join(tokens) + "\n")
    print(f"{out}: {len(tokens)} tokens, {len(set(tokens))} types")


if __name__ == "__main__":
    main()

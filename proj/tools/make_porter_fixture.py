#!/usr/bin/env python3
"""Regenerates tests/data/porter_vocabulary.tsv: words of the desk corpus seen at
least twice, stemmed by NLTK's PorterStemmer in MARTIN_EXTENSIONS mode (the
behaviour of Martin Porter's reference C implementation)."""
import collections
import pathlib
import sys

from nltk.stem.porter import PorterStemmer

root = pathlib.Path(__file__).resolve().parent.parent
corpus = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else root / "data" / "news_text8.txt"
stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
counts = collections.Counter(corpus.read_text().split())
extra = (root / "tools" / "porter_extra_words.txt").read_text().split()
words = sorted({w for w, n in counts.items() if n >= 2} | set(extra))
with open(root / "tests" / "data" / "porter_vocabulary.tsv", "w") as out:
    for w in words:
        out.write(f"{w}\t{stemmer.stem(w)}\n")
print(len(words))

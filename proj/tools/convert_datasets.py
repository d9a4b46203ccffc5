#!/usr/bin/env python3
"""Convert common benchmark distributions into the TSV layouts read by `semrel eval`.

  wordsim     word1 word2 score rows (comma, semicolon, tab or space separated)
  toefl       toefl.qst + toefl.ans from the LSA distribution
  sat         Turney's SAT analogy file (blank-line separated blocks)
  msr         msr_paraphrase_{train,test}.txt
  sentences   sentence1<TAB>sentence2<TAB>score rows
"""

import argparse
import csv
import re
import sys


def _rows(path):
    with open(path, encoding="utf-8", errors="replace") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line


def wordsim(path):
    out = []
    for line in _rows(path):
        parts = [p for p in re.split(r"[,;\t ]+", line) if p]
        if len(parts) < 3:
            continue
        try:
            score = float(parts[-1])
        except ValueError:
            continue  # header row
        out.append((parts[0].lower(), parts[1].lower(), repr(score)))
    return out


def toefl(qst_path, ans_path):
    questions = []
    for line in _rows(qst_path):
        m = re.match(r"^(\d+)\.\s+(.+)$", line)
        if m:
            questions.append((m.group(2).strip().lower(), []))
            continue
        m = re.match(r"^([a-d])\.\s+(.+)$", line)
        if m and questions:
            questions[-1][1].append(m.group(2).strip().lower())
    answers = []
    for line in _rows(ans_path):
        m = re.search(r"\(([a-d])\)", line)
        if m:
            answers.append("abcd".index(m.group(1)))
    if len(answers) != len(questions):
        raise SystemExit(f"{len(questions)} questions but {len(answers)} answers")
    return [(stem, ";".join(c), str(a)) for (stem, c), a in zip(questions, answers)]


def sat(path):
    with open(path, encoding="utf-8", errors="replace") as f:
        lines = [l.rstrip("\n") for l in f if not l.startswith("#")]
    blocks, cur = [], []
    for line in lines + [""]:
        if line.strip():
            cur.append(line.strip())
        elif cur:
            blocks.append(cur)
            cur = []
    out = []
    for b in blocks:
        pairs = [l for l in b if re.match(r"^\S+ \S+ \S:\S$", l)]
        answer = b[-1]
        if len(pairs) < 3 or not re.fullmatch(r"[a-e]", answer):
            continue
        stem = pairs[0].split()
        cands = [":".join(p.split()[:2]) for p in pairs[1:]]
        out.append((stem[0], stem[1], ";".join(cands), str("abcde".index(answer))))
    return out


def msr(path):
    out = []
    with open(path, encoding="utf-8-sig", errors="replace") as f:
        reader = csv.reader(f, delimiter="\t", quoting=csv.QUOTE_NONE)
        next(reader, None)
        for row in reader:
            if len(row) >= 5:
                out.append((row[0], _clean(row[3]), _clean(row[4])))
    return out


def sentences(path):
    out = []
    for line in _rows(path):
        parts = line.split("\t")
        if len(parts) < 3:
            continue
        try:
            score = float(parts[2])
        except ValueError:
            continue
        out.append((repr(score), _clean(parts[0]), _clean(parts[1])))
    return out


def _clean(text):
    return " ".join(text.replace("\t", " ").split())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("kind", choices=["wordsim", "toefl", "sat", "msr", "sentences"])
    ap.add_argument("inputs", nargs="+", help="source file(s); toefl takes the .qst then the .ans file")
    ap.add_argument("-o", "--output", help="output TSV (default stdout)")
    args = ap.parse_args(argv)

    if args.kind == "toefl":
        if len(args.inputs) != 2:
            ap.error("toefl needs the question and answer files")
        rows = toefl(*args.inputs)
    else:
        rows = {"wordsim": wordsim, "sat": sat, "msr": msr, "sentences": sentences}[args.kind](args.inputs[0])

    text = "".join("\t".join(row) + "\n" for row in rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    print(f"{len(rows)} rows", file=sys.stderr)


if __name__ == "__main__":
    main()

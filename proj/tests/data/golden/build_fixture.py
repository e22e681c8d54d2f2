#!/usr/bin/env python3
# Copyright 2026 The paraprobe Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the offline end-to-end fixture next to this file.

Writes the scripted generator replies, the memorized question tables of
the two stand-in NL2SQL models, and one CoNLL-U file per example. No
dependency parser is needed: trees come from a small rule-based attacher
that is deterministic and good enough to give paraphrases different shapes.
The two sentences of the worked example in tests/data/worked_example.conllu are
copied verbatim instead.

Usage: python3 build_fixture.py   (then re-bless expected/ if outputs move)
"""

import json
import pathlib
import re

HERE = pathlib.Path(__file__).resolve().parent
DEV = HERE.parent / "bench_spider" / "dev.json"
WORKED_EXAMPLE = HERE.parent / "worked_example.conllu"
PARSER = "fixture-heuristic-1"
NUM_QUERIES = 6

# Paraphrases in generator order, keyed by example index.
PARAPHRASES = {
    0: [
        "How many singers are recorded in the database?",
        "What is the number of singers?",
        "Count the singers.",
        "How many singers are there?",
        "Tell me the total count of performers listed.",
        "What is the singer count?",
    ],
    1: [
        "How many concerts are there?",
        "Count the number of concerts.",
        "What is the number of concerts in total?",
        "How many concerts have been held overall?",
        "Give the concert count.",
        "What is the total count of all shows?",
    ],
    2: [
        "List the name, country and age of every singer, sorted from oldest to youngest.",
        "What are the names, countries and ages of all singers ordered by age descending?",
        "Show each singer's name, country and age, oldest first.",
        "Give me name, country, age for all singers ordered by age from oldest to youngest.",
        "Display singers with their country and age, starting with the eldest.",
        "Which singers are there, with country and age, in decreasing order of age?",
    ],
    3: [
        "What is the average, minimum and maximum age of French singers?",
        "Give the mean, lowest and highest age of singers from France.",
        "For singers from France, what are the average, minimum and maximum ages?",
        "Compute the average, youngest and oldest age among French singers.",
        "What are the average, min and max ages of singers whose country is France?",
        "How old are French singers on average, at minimum and at maximum?",
    ],
    4: [
        "What is the name and release year of the song by the youngest singer?",
        "Which song, and in which year was it released, belongs to the youngest singer?",
        "Give the song name and release year for the youngest singer.",
        "Show the song name and song release year of the singer with the lowest age.",
        "For the youngest singer, list the title of their song and its release year.",
        "Name the track and year released by the singer who is youngest.",
    ],
    6: [
        "How many singers are there in each country?",
        "List every country with its number of singers.",
        "For each country, count the singers.",
        "Show all countries and the number of singers from each.",
        "What is the count of singers per country?",
        "Which countries do singers come from, and how many come from each?",
    ],
    7: [
        "What are the song names of singers older than average?",
        "List the songs by singers whose age is above the average.",
        "Show all song names from singers older than the average age.",
        "Which songs belong to singers above average age?",
        "Give the names of songs by singers who are older than average.",
        "Find song names for singers with above-average age.",
    ],
    8: [
        "What are the locations and names of stadiums with capacity between 5000 and 12000?",
        "List the location and name of every stadium whose capacity is between 5000 and 12000.",
        "Which stadiums have a capacity from 5000 to 12000, and where are they?",
        "Show name and location for stadiums holding between 5000 and 12000 people.",
        "Give the location and name of stadiums with capacity in the range 5000 to 12000.",
        "Find stadium names and locations where the capacity lies between 5000 and 12000.",
    ],
    9: [
        "What are the maximum capacity and the average of all stadiums?",
        "Give the highest capacity and the average over all stadiums.",
        "Show the maximum capacity and average for the stadiums.",
        "Across all stadiums, what is the largest capacity and the average?",
        "Find the max capacity and the average value of every stadium.",
        "Which is the biggest stadium capacity, and what is the average?",
    ],
    10: [
        "How many concerts took place in 2014 or 2015?",
        "Count the concerts held in the year 2014 or 2015.",
        "What is the number of concerts in 2014 or 2015?",
        "How many concerts were there in either 2014 or 2015?",
        "Give the number of concerts from 2014 or 2015.",
        "In 2014 or 2015, how many concerts happened?",
    ],
    11: [
        "For each stadium, show its name and how many concerts it hosted.",
        "What is the name of each stadium and its number of concerts?",
        "List stadium names with the count of concerts at each.",
        "Show the stadium name and the number of concerts held in each stadium.",
        "How many concerts did every stadium have, by name?",
        "Give each stadium's name together with its concert count.",
    ],
}

GARBAGE_EXAMPLE = 5          # generator never returns a list
TRANSPORT_RETRY_EXAMPLE = 1  # first call fails, second succeeds
SHORT_FIRST_EXAMPLE = 3      # first reply has a duplicate and is short
MISSING_PARSE_EXAMPLE = 7    # no CoNLL-U file is provided
UNPARSED_CANDIDATE = (9, 2)  # this candidate gets no CoNLL-U block

# --- heuristic dependency attachment ---------------------------------------

WH = {"how", "what", "which", "who", "where", "when"}
AUX = {"is", "are", "was", "were", "be", "been", "do", "does", "did", "have", "has", "had"}
PRON = {"we", "me", "it", "its", "their", "they", "i", "you", "each", "every", "all"}
DET = {"the", "a", "an", "this", "that", "these", "those"}
ADJ = {"many", "total", "average", "minimum", "maximum", "lowest", "highest", "mean",
       "youngest", "oldest", "eldest", "french", "distinct", "largest", "biggest",
       "max", "min", "older", "above-average", "decreasing", "overall", "old"}
ADP = {"in", "of", "from", "for", "by", "to", "with", "per", "at", "between", "among",
       "over", "across", "on", "into"}
CCONJ = {"and", "or", "either"}
VERB = {"show", "list", "give", "count", "tell", "find", "compute", "display", "name",
        "recorded", "held", "hosted", "sorted", "ordered", "released", "belongs", "come",
        "happened", "took", "starting", "lies", "holding", "have", "do", "are", "is",
        "were", "place", "whose", "listed"}
LEMMA = {"are": "be", "is": "be", "were": "be", "was": "be", "did": "do", "does": "do",
         "has": "have", "had": "have", "recorded": "record", "held": "hold",
         "hosted": "host", "sorted": "sort", "ordered": "order", "released": "release",
         "belongs": "belong", "happened": "happen", "took": "take", "lies": "lie",
         "holding": "hold", "starting": "start", "listed": "list", "ages": "age",
         "countries": "country", "stadiums": "stadium", "locations": "location",
         "names": "name", "songs": "song", "concerts": "concert", "singers": "singer",
         "shows": "show", "performers": "performer"}


def tokenize(text):
    return re.findall(r"[A-Za-z0-9]+(?:[-'][A-Za-z0-9]+)*|'s|[^\sA-Za-z0-9]", text)


def upos(word, index):
    w = word.lower()
    if not re.match(r"[A-Za-z0-9]", word):
        return "PUNCT"
    if w.isdigit():
        return "NUM"
    if w in WH:
        return "SCONJ" if w == "how" else "PRON"
    if w == "'s":
        return "PART"
    if w in DET:
        return "DET"
    if w in CCONJ:
        return "CCONJ"
    if w in ADP:
        return "ADP"
    if w in AUX and index > 0:
        return "AUX"
    if w in PRON:
        return "PRON"
    if w in ADJ:
        return "ADJ"
    if w in VERB:
        return "VERB"
    return "NOUN"


def parse(text):
    words = tokenize(text)
    tags = [upos(w, i) for i, w in enumerate(words)]
    # Imperatives start with a verb; questions use their first full verb,
    # falling back to the first auxiliary and then the first noun.
    root = next((i for i, t in enumerate(tags) if t == "VERB"), None)
    if root is None:
        root = next((i for i, t in enumerate(tags) if t == "AUX"), None)
    if root is None:
        root = next((i for i, t in enumerate(tags) if t == "NOUN"), 0)
    heads = [0] * len(words)
    open_adp = None
    for i, t in enumerate(tags):
        if i == root:
            continue
        nxt = next((j for j in range(i + 1, len(words)) if tags[j] in ("NOUN", "ADJ")), None)
        if t in ("DET", "ADJ", "NUM", "SCONJ", "PART") and nxt is not None and nxt != i:
            heads[i] = nxt + 1
        elif t == "ADP":
            heads[i] = root + 1
            open_adp = i
        elif t == "NOUN":
            follow = i + 1 < len(words) and tags[i + 1] == "NOUN"
            if open_adp is not None:
                heads[i] = open_adp + 1
                open_adp = None
            elif follow and i + 1 != root:
                heads[i] = i + 2
            else:
                heads[i] = root + 1
        else:
            heads[i] = root + 1
    rows = []
    for i, w in enumerate(words):
        lemma = LEMMA.get(w.lower(), w.lower())
        rel = "root" if i == root else "dep"
        rows.append(f"{i + 1}\t{w}\t{lemma}\t{tags[i]}\t_\t_\t{heads[i]}\t{rel}\t_\t_")
    return rows


def block(sent_id, text, rows):
    return f"# sent_id = {sent_id}\n# text = {text}\n" + "\n".join(rows) + "\n\n"


def worked_example_blocks():
    blocks = {}
    for chunk in WORKED_EXAMPLE.read_text().strip().split("\n\n"):
        lines = chunk.splitlines()
        text = next(l.split("= ", 1)[1] for l in lines if l.startswith("# text"))
        blocks[text] = [l for l in lines if not l.startswith("#")]
    return blocks


def numbered(items):
    return "\n".join(f"{k}. {q}" for k, q in enumerate(items, 1))


def main():
    dev = json.loads(DEV.read_text())
    ids = [f"spider-dev-{i:04d}" for i in range(len(dev))]

    rules = []
    for i, ex in enumerate(dev):
        match = "SQL Query:\n" + ex["query"] + "\n"
        if i == GARBAGE_EXAMPLE:
            replies = ["I'm sorry, but I can't help with that request."]
        else:
            full = "Here are the questions:\n" + numbered(PARAPHRASES[i])
            replies = [full]
            if i == TRANSPORT_RETRY_EXAMPLE:
                replies = [{"error": "connection reset by peer"}, full]
            if i == SHORT_FIRST_EXAMPLE:
                a, b = PARAPHRASES[i][0], PARAPHRASES[i][1]
                replies = [numbered([a, a.lower(), b]), full]
        rules.append({"match": match, "replies": replies})
    script = {"model": "scripted-paraphraser", "rules": rules}
    (HERE / "gen_script.json").write_text(json.dumps(script, indent=2) + "\n")

    worked = worked_example_blocks()
    parses = HERE / "parses"
    parses.mkdir(exist_ok=True)
    for old in parses.glob("*.conllu"):
        old.unlink()
    for i, ex in enumerate(dev):
        if i in (GARBAGE_EXAMPLE, MISSING_PARSE_EXAMPLE):
            continue
        out = f"# parser = {PARSER}\n"
        sentences = [ex["question"]] + PARAPHRASES[i]
        for pos, text in enumerate(sentences):
            if (i, pos) == (UNPARSED_CANDIDATE[0], UNPARSED_CANDIDATE[1] + 1):
                continue
            rows = worked.get(text) or parse(text)
            out += block(f"{ids[i]}:{pos}", text, rows)
        (parses / f"{ids[i]}.conllu").write_text(out)

    # memo-strict remembers every benchmark question with its gold SQL except
    # one it has memorized wrongly; memo-loose matches more eagerly and has a
    # query against a table that does not exist.
    strict = [{"question": ex["question"], "sql": ex["query"]} for ex in dev]
    strict[8]["sql"] = "SELECT location , name FROM stadium WHERE capacity > 5000"
    loose = [{"question": ex["question"], "sql": ex["query"]} for ex in dev]
    loose[4]["sql"] = ("SELECT song_name , song_release_year FROM singers "
                       "ORDER BY age LIMIT 1")
    (HERE / "memo_strict.json").write_text(json.dumps(strict, indent=2) + "\n")
    (HERE / "memo_loose.json").write_text(json.dumps(loose, indent=2) + "\n")


if __name__ == "__main__":
    main()

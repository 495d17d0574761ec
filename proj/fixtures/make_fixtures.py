#!/usr/bin/env python3
# Copyright 2026 The steprag Authors.
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

"""Writes fixtures/v1: worked example transcripts, corpus, scripts and the labeled
detection set.

Every step below carries a hand-assigned expected label next to the scripted
backend behaviour. The oracle file is written from those hand labels, and the
metric numerators/denominators in EXPECTED_COUNTS are counted by hand; the
script only cross-checks the two before writing anything.
"""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent / "v1"

BLOOMSBURG = ["Bloomsburg, Pennsylvania", "The Only Town in Pennsylvania",
              "Bloomsburg"]
SLOW_DOWN_Q = ("What is the place of birth of the performer of song Slow Down "
               "(Lacy J. Dalton Song)?")
DALTON_BODY = ("Lacy J. Dalton (born Jill Lynne Byrem; October 13, 1946, "
               "Bloomsburg, Pennsylvania) is an American country singer...")


class Err:
    def __init__(self, message):
        self.message = message


def S(r, q, c, o, policy, judge, expect):
    return dict(kind="search", r=r, q=q, c=c, o=o, policy=policy, judge=judge,
                expect=expect)


def N(r, o, verifier, expect):
    return dict(kind="non_search", r=r, o=o, verifier=verifier, expect=expect)


T = "<answer>True</answer>"
F = "<answer>False</answer>"


def render(steps, answer):
    parts = ["<think>"]
    for s in steps:
        parts.append("<step>")
        parts.append(f"<reasoning>{s['r']}</reasoning>")
        if s["kind"] == "search":
            parts.append(f"<search>{s['q']}</search>")
            parts.append(f"<context>{s['c']}</context>")
        parts.append(f"<conclusion>{s['o']}</conclusion>")
        parts.append("</step>")
    parts.append("</think>")
    parts.append(f"<answer>{answer}</answer>")
    return "\n".join(parts)


REDUNDANT_STEPS = [
    S("I don't have direct information about the performer of the song 'Slow "
      "Down' and their place of birth.",
      "What is the performer of the song 'Slow Down'?",
      "... [Returns Doc 1: Bobby Valentino, Doc 2: Douwe Bob, Doc 3: Selena "
      "Gomez] ...",
      "Based on the search results, 'Slow Down' is a song by three different "
      "performers: Bobby Valentino, Douwe Bob, and Selena Gomez. I don't have "
      "information about the place of birth of the performer of this song.",
      "Songs titled 'Slow Down' were recorded by Bobby Valentino, Douwe Bob "
      "and Selena Gomez.",
      "Both statements name the same three performers.\n" + T, "OverSearch"),
    S("Since I don't have information about the performer's place of birth, "
      "I will first need to determine who the performer of the song 'Slow "
      "Down' is.",
      "Who is the performer of the song 'Slow Down'?",
      "... [Returns Doc 1: Bobby Valentino, Doc 2: Douwe Bob, Doc 3: Selena "
      "Gomez] ...",
      "Based on the search results, the performer of the song 'Slow Down' can "
      "be either Bobby Valentino, Douwe Bob, or Selena Gomez.",
      "It could be Bobby Valentino, Douwe Bob or Selena Gomez.",
      T, "OverSearch"),
    S("Now that I know the performers, I will need to find out the place of "
      "birth of each of them...",
      "What is the place of birth of Bobby Valentino?",
      "... [Returns birthplace: Chatham, Kent] ...",
      "Based on the search results, Bobby Valentino was born in Chatham, Kent.",
      "Chatham, Kent, England.", T, "OverSearch"),
    S("Now that I have the place of birth of Bobby Valentino, I will need to "
      "find out the place of birth of Douwe Bob.",
      "What is the place of birth of Douwe Bob?",
      "[Returns birthplace: Amsterdam, Netherlands]",
      "Based on the search results, Douwe Bob was born in Amsterdam, "
      "Netherlands.",
      "Amsterdam", "<answer> TRUE </answer>", "OverSearch"),
    S("Finally, I will need to find out the place of birth of Selena Gomez.",
      "What is the place of birth of Selena Gomez?",
      "[Returns birthplace: Grand Prairie, Texas]",
      "Based on the search results, Selena Gomez was born in Grand Prairie, "
      "Texas.",
      "Selena Gomez was born in Grand Prairie, Texas.", T, "OverSearch"),
]
REDUNDANT_ANSWER = (
    "Based on the information gathered, the performer of the song 'Slow Down' "
    "can be either Bobby Valentino, Douwe Bob, or Selena Gomez. Bobby "
    "Valentino was born in Chatham, Kent. Douwe Bob was born in Amsterdam, "
    "Netherlands. Selena Gomez was born in Grand Prairie, Texas.")

BIRTHPLACE_STEPS = [
    N("What do I need to know to answer this question? First, I need to find "
      "this performer of Slow Down. Then I need to find out the place of birth "
      "of the performer.",
      "According to the question, the performer of the song Slow Down (Lacy "
      "J. Dalton Song) is Lacy J. Dalton...",
      T, "Optimal"),
    S("Now that I have the answer to the first part, I need to find the place "
      "of birth of the performer. Where can I find this information? I will "
      "need to search for it.",
      "Place of birth of Lacy J. Dalton",
      'Doc 1(Title: "Lacy J. Dalton") ' + DALTON_BODY,
      "According to the context, the place of birth of Lacy J. Dalton is "
      "Bloomsburg, Pennsylvania.",
      "I am not sure; possibly Reno, Nevada.",
      "The first names Bloomsburg, the second Reno.\n" + F, "Optimal"),
]
BIRTHPLACE_ANSWER = (
    "According to the information found, the place of birth of the performer "
    "of the song Slow Down (Lacy J. Dalton Song) is Bloomsburg, Pennsylvania. "
    "Lacy J. Dalton was born on October 13, 1946, in Bloomsburg, Pennsylvania.")

RECORDS = [
    dict(id="2wiki-birthplace", dataset="2wiki", question=SLOW_DOWN_Q,
         goldens=BLOOMSBURG, steps=BIRTHPLACE_STEPS, answer=BIRTHPLACE_ANSWER),
    dict(id="2wiki-redundant-search", dataset="2wiki", question=SLOW_DOWN_Q,
         goldens=BLOOMSBURG, steps=REDUNDANT_STEPS, answer=REDUNDANT_ANSWER),
    dict(id="nq-canberra", dataset="nq",
         question="What is the capital of Australia?", goldens=["Canberra"],
         steps=[
             N("The question asks for a capital city, so I should recall the "
               "country first.", "The country in question is Australia.",
               T, "Optimal"),
             S("I want to confirm the capital of Australia.",
               "capital of Australia",
               'Doc 1(Title: "Canberra") Canberra is the capital city of '
               "Australia.",
               "Canberra", "Canberra", "Identical.\n" + T, "OverSearch"),
         ], answer="Canberra"),
    dict(id="nq-everest", dataset="nq",
         question="How tall is Mount Everest?", goldens=["8,849 metres",
                                                         "8849 m"],
         steps=[
             N("Mount Everest is the highest mountain above sea level; its "
               "surveyed height was revised in 2020.",
               "Mount Everest is 8,849 metres tall.", T, "Optimal"),
         ], answer="8,849 metres"),
    dict(id="nq-great-wall", dataset="nq",
         question="Can the Great Wall of China be seen from the Moon with the "
                  "naked eye?", goldens=["no"],
         steps=[
             N("It is widely said that the wall is the only structure visible "
               "from space.",
               "The Great Wall of China is visible from the Moon with the "
               "naked eye.", F, "UnderSearch"),
             S("I should double-check the visibility claim.",
               "is the great wall of china visible from the moon",
               'Doc 1(Title: "Great Wall of China") The wall is not visible '
               "to the naked eye from the Moon.",
               "The Great Wall is not visible from the Moon with the naked "
               "eye.",
               "Yes, it is visible from the Moon.",
               "They contradict each other.\n" + F, "Optimal"),
         ], answer="No, it cannot."),
    dict(id="nq-retry", dataset="nq",
         question="Who wrote Pride and Prejudice?", goldens=["Jane Austen"],
         steps=[
             S("I need the author of Pride and Prejudice.",
               "author of Pride and Prejudice",
               'Doc 1(Title: "Pride and Prejudice") Pride and Prejudice is an '
               "1813 novel by Jane Austen.",
               "Jane Austen wrote Pride and Prejudice.", "Jane Austen",
               ["Let me think about whether these match.",
                "Both name the same author. <answer>true</answer>"],
               "OverSearch"),
         ], answer="Jane Austen"),
    dict(id="nq-garbled", dataset="nq",
         question="Which element has the chemical symbol Fe?",
         goldens=["iron"],
         steps=[
             S("I should look up the symbol Fe.", "chemical symbol Fe element",
               'Doc 1(Title: "Iron") Iron is a chemical element; it has '
               "symbol Fe.",
               "Fe is the symbol for iron.", "Iron",
               "These look equivalent to me.",
               ("Unjudged", "unparseable verdict")),
         ], answer="Iron"),
    dict(id="nq-timeout", dataset="nq",
         question="What year did the Berlin Wall fall?", goldens=["1989"],
         steps=[
             S("I need the year the Berlin Wall fell.",
               "year the Berlin Wall fell",
               'Doc 1(Title: "Berlin Wall") The Berlin Wall fell on 9 '
               "November 1989.",
               "The Berlin Wall fell in 1989.", "1989",
               Err("timeout"), ("Unjudged", "judge unavailable: timeout")),
         ], answer="It fell in 1989."),
    dict(id="nq-mixed", dataset="nq",
         question="Which river flows through the capital of Egypt?",
         goldens=["Nile", "the Nile"],
         steps=[
             N("The capital of Egypt is a well-known fact.",
               "The capital of Egypt is Cairo.", T, "Optimal"),
             S("I want to check which river runs through Cairo.",
               "river flowing through Cairo",
               'Doc 1(Title: "Cairo") Cairo lies on the banks of the Nile.',
               "The Nile flows through Cairo.", "The Nile river.",
               T, "OverSearch"),
             N("The Nile is the longest river in Africa, flowing into the "
               "Atlantic Ocean.",
               "The Nile empties into the Atlantic Ocean.", F, "UnderSearch"),
         ], answer="The Nile"),
    dict(id="hotpotqa-director", dataset="hotpotqa",
         question="Who directed the film in which Tom Hanks played Forrest "
                  "Gump, and what year was it released?",
         goldens=["Robert Zemeckis"],
         steps=[
             S("I need the director of Forrest Gump.",
               "Forrest Gump film director",
               'Doc 1(Title: "Forrest Gump") Forrest Gump is a 1994 film '
               "directed by Robert Zemeckis.",
               "Robert Zemeckis directed Forrest Gump.",
               "Steven Spielberg", F, "Optimal"),
             S("Now I need the release year.", "Forrest Gump release year",
               'Doc 1(Title: "Forrest Gump") The film was released in 1994.',
               "It was released in 1994.", "1994", T, "OverSearch"),
             N("Combining both facts gives the answer.",
               "Robert Zemeckis directed it and it was released in 1994.",
               T, "Optimal"),
         ], answer="Robert Zemeckis, 1994"),
    dict(id="hotpotqa-verifier-down", dataset="hotpotqa",
         question="In which country is the city where the Eiffel Tower "
                  "stands?", goldens=["France"],
         steps=[
             N("The Eiffel Tower is a landmark in Paris.",
               "The Eiffel Tower stands in Paris.",
               Err("connection refused"),
               ("Unjudged", "judge unavailable: connection refused")),
             S("Which country is Paris in?", "country of Paris",
               'Doc 1(Title: "Paris") Paris is the capital of France.',
               "Paris is in France.", "Paris is in Texas.", F, "Optimal"),
         ], answer="France"),
    dict(id="hotpotqa-policy-down", dataset="hotpotqa",
         question="What is the home stadium of the club Lionel Messi joined "
                  "in 2023?", goldens=["Chase Stadium", "DRV PNK Stadium"],
         steps=[
             S("Which club did Messi join in 2023?",
               "club Lionel Messi joined in 2023",
               'Doc 1(Title: "Inter Miami CF") Messi joined Inter Miami in '
               "July 2023.",
               "Messi joined Inter Miami CF.", Err("policy model offline"),
               None, ("Unjudged", "policy regeneration failed")),
         ], answer="Chase Stadium"),
    dict(id="hotpotqa-empty-query", dataset="hotpotqa",
         question="Which planet is known as the Red Planet, and how many "
                  "moons does it have?", goldens=["Mars"],
         steps=[
             S("I will search for the red planet.", " ",
               "", "Mars is the Red Planet.", None, None,
               ("Unjudged", "empty query")),
             N("Mars has three moons.", "Mars has three moons: Phobos, Deimos "
               "and Titan.", F, "UnderSearch"),
         ], answer="Mars"),
    dict(id="hotpotqa-stray-text", dataset="hotpotqa",
         question="Who painted the Mona Lisa?", goldens=["Leonardo da Vinci"],
         raw=("Sure! Here is my reasoning.\n<think>\n<step>\n<reasoning>I know "
              "this one.</reasoning>\n<conclusion>Leonardo da Vinci painted "
              "it.</conclusion>\n</step>\n</think>\n<answer>Leonardo da Vinci"
              "</answer>"),
         expect_labels=[]),
    dict(id="hotpotqa-verifier-retry", dataset="hotpotqa",
         question="What is the boiling point of water at sea level in "
                  "Fahrenheit?", goldens=["212"],
         steps=[
             N("Water boils at 100 degrees Celsius at sea level.",
               "That is 180 degrees Fahrenheit.",
               ["<answer>maybe</answer>", "The conversion is wrong. " + F],
               "UnderSearch"),
         ], answer="180 degrees Fahrenheit"),
    dict(id="hotpotqa-empty-conclusion", dataset="hotpotqa",
         question="Which language has the most native speakers?",
         goldens=["Mandarin Chinese", "Mandarin"],
         steps=[
             S("I should look up native speaker counts.",
               "language with most native speakers",
               'Doc 1(Title: "List of languages by number of native '
               'speakers") Mandarin Chinese has the most native speakers.',
               "", "Mandarin Chinese", None,
               ("Unjudged", "empty conclusion")),
         ], answer="Mandarin Chinese"),
    dict(id="2wiki-all-optimal", dataset="2wiki",
         question="Who was the first person to walk on the Moon, and which "
                  "mission was it?", goldens=["Neil Armstrong"],
         steps=[
             N("The first Moon landing was in 1969.",
               "Apollo 11 landed on the Moon in July 1969.", T, "Optimal"),
             N("Apollo 11 carried Neil Armstrong, Buzz Aldrin and Michael "
               "Collins.", "Neil Armstrong stepped out first.", T, "Optimal"),
             S("I want to confirm the exact landing date.",
               "Apollo 11 landing date",
               'Doc 1(Title: "Apollo 11") Apollo 11 landed on July 20, 1969.',
               "Apollo 11 landed on July 20, 1969.", "July 16, 1969",
               "Different dates.\n" + F, "Optimal"),
         ], answer="Neil Armstrong, on Apollo 11"),
    dict(id="2wiki-unclosed-step", dataset="2wiki",
         question="Who composed the opera Carmen?", goldens=["Georges Bizet",
                                                             "Bizet"],
         raw=("<think>\n<step>\n<reasoning>Carmen is a French opera."
              "</reasoning>\n<conclusion>It was composed by Georges Bizet."
              "</conclusion>\n</think>\n<answer>Georges Bizet</answer>"),
         expect_labels=[]),
    dict(id="2wiki-verifier-flaky", dataset="2wiki",
         question="What is the largest ocean on Earth?",
         goldens=["Pacific Ocean", "Pacific"],
         steps=[
             N("The Pacific covers about a third of the planet's surface.",
               "The Pacific Ocean is the largest ocean.",
               [Err("HTTP 503"), T], "Optimal"),
         ], answer="The Pacific Ocean"),
    dict(id="2wiki-wrong-answer", dataset="2wiki",
         question="Which country hosted the 2016 Summer Olympics?",
         goldens=["Brazil"],
         steps=[
             S("I need the host city of the 2016 Olympics.",
               "2016 Summer Olympics host city",
               'Doc 1(Title: "2016 Summer Olympics") The games were held in '
               "Rio de Janeiro.",
               "The 2016 Olympics were held in Rio de Janeiro.",
               "London", F, "Optimal"),
             S("Which country is Rio de Janeiro in?",
               "country of Rio de Janeiro",
               'Doc 1(Title: "Rio de Janeiro") Rio de Janeiro is a city in '
               "Brazil.",
               "Rio de Janeiro is in Portugal.", "Brazil", F, "Optimal"),
         ], answer="Portugal"),
]

# Hand counts over the records above, per dataset:
# (records, parsed, correct, search, non_search, over, under, unjudged)
EXPECTED_COUNTS = {
    # birthplace, redundant, all-optimal, unclosed-step, verifier-flaky, wrong-answer
    "2wiki": dict(records=6, parsed=5, correct=4, search_steps=9,
                  non_search_steps=4, flagged_over=5, flagged_under=0,
                  unjudged=0),
    # canberra, everest, great-wall, retry, garbled, timeout, mixed
    "nq": dict(records=7, parsed=7, correct=7, search_steps=6,
               non_search_steps=5, flagged_over=3, flagged_under=2,
               unjudged=2),
    # director, verifier-down, policy-down, empty-query, stray-text,
    # verifier-retry, empty-conclusion
    "hotpotqa": dict(records=7, parsed=6, correct=6, search_steps=6,
                     non_search_steps=4, flagged_over=1, flagged_under=2,
                     unjudged=4),
}


def label_json(expect):
    if isinstance(expect, tuple):
        return {"verdict": "Unjudged", "reason": expect[1]}
    return {"verdict": expect}


def script_entry(key, reply):
    if isinstance(reply, Err):
        return {"key": key, "error": reply.message}
    if isinstance(reply, list):
        return {"key": key, "responses": [
            {"error": r.message} if isinstance(r, Err) else r for r in reply]}
    return {"key": key, "response": reply}


def cem(answer, goldens):
    norm = lambda s: " ".join(s.lower().split())
    a = norm(answer)
    return any(norm(g) and norm(g) in a for g in goldens)


def build():
    records, oracle, policy, judge, verifier = [], [], [], [], []
    keys = set()

    def add(table, key, reply):
        assert key not in keys, f"duplicate script key: {key!r}"
        keys.add(key)
        table.append(script_entry(key, reply))

    counted = {}
    for rec in RECORDS:
        raw = rec.get("raw") or render(rec["steps"], rec["answer"])
        records.append({"id": rec["id"], "dataset": rec["dataset"],
                        "question": rec["question"],
                        "golden_answers": rec["goldens"], "raw_text": raw})
        if "raw" in rec:
            labels = rec["expect_labels"]
        else:
            labels = [label_json(s["expect"]) for s in rec["steps"]]
            for s in rec["steps"]:
                if s["kind"] == "search":
                    q = s["q"].strip()
                    if not q:
                        continue
                    add(policy, q, s["policy"])
                    if isinstance(s["policy"], Err):
                        continue
                    if s["judge"] is not None:
                        add(judge, f"Statement 1: {s['o']}\nStatement 2: "
                                   f"{s['policy'].strip()}", s["judge"])
                else:
                    add(verifier, f"<reasoning>{s['r']}</reasoning>\n"
                                  f"<conclusion>{s['o']}</conclusion>",
                        s["verifier"])
        oracle.append({"id": rec["id"], "labels": labels})

        # Cross-check of the hand counts.
        c = counted.setdefault(rec["dataset"], dict.fromkeys(
            EXPECTED_COUNTS["nq"], 0))
        c["records"] += 1
        answer = rec.get("answer") or raw.split("<answer>")[-1].split(
            "</answer>")[0].strip()
        c["correct"] += cem(answer, rec["goldens"])
        if "raw" in rec:
            continue
        c["parsed"] += 1
        for s, lab in zip(rec["steps"], labels):
            c["search_steps" if s["kind"] == "search"
              else "non_search_steps"] += 1
            v = lab["verdict"]
            c["flagged_over"] += v == "OverSearch"
            c["flagged_under"] += v == "UnderSearch"
            c["unjudged"] += v == "Unjudged"
    assert counted == EXPECTED_COUNTS, counted

    # Birthplace scripts for the end-to-end run share the detection scripts.
    return records, oracle, policy, judge, verifier


CORPUS = [
    ("lacy-j-dalton", "Lacy J. Dalton", DALTON_BODY),
    ("slow-down-valentino", "Slow Down (Bobby Valentino song)",
     "\"Slow Down\" is the debut single by American R&B singer Bobby "
     "Valentino, released in 2005."),
    ("slow-down-douwe-bob", "Slow Down (Douwe Bob song)",
     "\"Slow Down\" is a song performed by Dutch singer Douwe Bob at the "
     "Eurovision Song Contest 2016."),
    ("slow-down-selena-gomez", "Slow Down (Selena Gomez song)",
     "\"Slow Down\" is a song recorded by American singer Selena Gomez for her "
     "debut solo album Stars Dance."),
    ("bobby-valentino", "Bobby Valentino",
     "Bobby Valentino is an English violinist and singer from Chatham, Kent."),
    ("douwe-bob", "Douwe Bob",
     "Douwe Bob Posthuma is a Dutch singer-songwriter born in Amsterdam, "
     "Netherlands."),
    ("selena-gomez", "Selena Gomez",
     "Selena Marie Gomez is an American singer and actress born in Grand "
     "Prairie, Texas."),
    ("bloomsburg", "Bloomsburg, Pennsylvania",
     "Bloomsburg is the only incorporated town in the U.S. state of "
     "Pennsylvania and the county seat of Columbia County."),
    ("playstation-5", "PlayStation 5",
     "The PlayStation 5 (PS5) is a home video game console developed by Sony "
     "Interactive Entertainment. Its GPU is a custom AMD RDNA 2 design."),
    ("amd", "AMD",
     "Advanced Micro Devices, Inc. (AMD) is an American semiconductor company. "
     "Lisa Su has been its president and CEO since 2014."),
    ("canberra", "Canberra", "Canberra is the capital city of Australia."),
    ("great-wall", "Great Wall of China",
     "The Great Wall is not visible to the naked eye from the Moon."),
]

BIRTHPLACE_SEGMENTS = [
    BIRTHPLACE_STEPS[0]["r"] + "</reasoning>\n<conclusion>" + BIRTHPLACE_STEPS[0]["o"] +
    "</conclusion>",
    BIRTHPLACE_STEPS[1]["r"] + "</reasoning>\n<search>" + BIRTHPLACE_STEPS[1]["q"] +
    "</search>",
    BIRTHPLACE_STEPS[1]["o"] + "</conclusion>",
    "\n</think>\n<answer>" + BIRTHPLACE_ANSWER + "</answer>",
]


def four_step():
    def step(r, o, q=None, c=None):
        s = f"<step>\n<reasoning>\n{r}\n</reasoning>\n"
        if q is not None:
            s += f"<search>\n{q}\n</search>\n<context>\n{c}\n</context>\n"
        return s + f"<conclusion>\n{o}\n</conclusion>\n</step>\n"
    return ("<think>\n" +
            step("This is a multi-part question. First, I need to identify the "
                 "latest PlayStation console. Then, I need to find out which "
                 "company makes its graphics cards. I suspect it's either Sony "
                 "itself, NVIDIA, or AMD, but I need to be certain. I will "
                 "start by identifying the latest PlayStation model.",
                 "PlayStation 5 (PS5)", "latest playstation console model",
                 "The latest PlayStation console is the PlayStation 5 (PS5).") +
            step("Now that I know the console is the PS5, I need to find the "
                 "manufacturer of its graphics processing unit (GPU).", "AMD") +
            step("I have identified the company as AMD. Now I need to find its "
                 "current CEO.", "Dr. Lisa Su", "current CEO of AMD",
                 "The current President and CEO of AMD is Dr. Lisa Su.") +
            step("I have the company (AMD) and the CEO (Lisa Su). Now I need to "
                 "find the stock price. Today is Saturday, July 19, 2025, so I "
                 "need the closing price from Friday, July 18, 2025.",
                 "$175.40", "AMD stock price closing July 18 2025",
                 "AMD (Advanced Micro Devices, Inc.) closed at $175.40 on "
                 "Friday, July 18, 2025.") +
            "</think>\n<answer>\nDr. Lisa Su and $175.40.\n</answer>\n")


def write_jsonl(name, rows):
    with open(OUT / name, "w", encoding="utf-8", newline="\n") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    records, oracle, policy, judge, verifier = build()
    write_jsonl("detection_input.jsonl", records)
    write_jsonl("detection_oracle.jsonl", oracle)
    write_jsonl("policy_script.jsonl", policy)
    write_jsonl("judge_script.jsonl", judge)
    write_jsonl("verifier_script.jsonl", verifier)
    with open(OUT / "detection_expected_counts.json", "w") as f:
        json.dump(EXPECTED_COUNTS, f, indent=2, sort_keys=True)
        f.write("\n")

    (OUT / "four_step_example.txt").write_text(four_step())
    (OUT / "redundant_search_example.txt").write_text(render(REDUNDANT_STEPS, REDUNDANT_ANSWER) + "\n")
    (OUT / "birthplace_example.txt").write_text(render(BIRTHPLACE_STEPS, BIRTHPLACE_ANSWER) + "\n")
    write_jsonl("corpus.jsonl", [{"id": i, "title": t, "body": b}
                                 for i, t, b in CORPUS])
    write_jsonl("birthplace_generator.jsonl",
                [{"question": SLOW_DOWN_Q, "segments": BIRTHPLACE_SEGMENTS}])
    write_jsonl("birthplace_questions.jsonl",
                [{"id": "birthplace", "dataset": "2wiki", "question": SLOW_DOWN_Q,
                  "golden_answers": BLOOMSBURG}])
    write_jsonl("goldens.jsonl", [{"id": r["id"],
                                   "golden_answers": r["golden_answers"]}
                                  for r in records])

    config = {
        "reward": {"lambda_f": 0.2, "lambda_p": 0.4},
        "rollout": {"step_budget": 8, "top_k": 1, "mode": "deterministic"},
        "retriever": {"corpus": "corpus.jsonl", "k1": 1.2, "b": 0.75},
        "detection": {"max_retries": 2},
        "policy": {"kind": "scripted", "script": "policy_script.jsonl"},
        "over_search_judge": {"kind": "scripted",
                              "script": "judge_script.jsonl"},
        "under_search_verifier": {"kind": "scripted",
                                  "script": "verifier_script.jsonl"},
        "generator": {"kind": "scripted", "script": "birthplace_generator.jsonl"},
        "concurrency": {"max_in_flight": 4},
        "seed": 7,
    }
    with open(OUT / "config.json", "w") as f:
        json.dump(config, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()

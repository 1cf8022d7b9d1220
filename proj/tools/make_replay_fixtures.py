#!/usr/bin/env python3
# Copyright 2026 The archbench Authors
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
"""Writes the pubsub replay fixtures from a generated question set."""

import argparse
import json
import pathlib

MODEL = "gemini-2.5-flash"

# Questions per stratum in the hand-written fixture; real entities only so
# the ids do not depend on the seed.
PICKS = [
    ("ENTITY", "BOOL", 4), ("ENTITY", "MCQ", 4), ("PUBLISH", "BOOL", 3),
    ("PUBLISH", "OPEN", 2), ("SUBSCRIBE", "BOOL", 3), ("SUBSCRIBE", "OPEN", 2),
    ("SERVICE", "BOOL", 3), ("SERVICE", "OPEN", 1), ("CLIENT", "BOOL", 2),
    ("CLIENT", "OPEN", 1), ("MESSAGE", "BOOL", 2), ("SERVICE_TYPE", "OPEN", 2),
    ("TOPIC_TYPE", "OPEN", 1),
]

OPTION_TEXT = {1: "a ROS topic", 2: "a ROS service", 3: "a ROS node"}


def canonical(truth):
    kind = truth["kind"]
    if kind == "bool":
        return "Yes" if truth["value"] else "No"
    if kind == "option":
        return str(truth["index"])
    values = truth["values"]
    return ", ".join(values) if values else "None"


def styled_answer(truth, style):
    """Correct answer text written in one of several response styles."""
    kind = truth["kind"]
    if kind == "bool":
        word = "Yes" if truth["value"] else "No"
        return [word, f"**{word}**", f"{word}.", f"{word}, it does."][style % 4]
    if kind == "option":
        index = truth["index"]
        return [str(index), f"Option {index}", OPTION_TEXT[index], f"**{index}**"][style % 4]
    values = truth["values"]
    if not values:
        return ["None", "None."][style % 2]
    if kind == "types":
        return [values[0], f"`{values[0]}`"][style % 2]
    if style % 3 == 0:
        return ", ".join(values)
    if style % 3 == 1:
        return "\n" + "\n".join(f"- {v}" for v in values) + "\n"
    return "\n" + "\n".join(f"{i + 1}. `{v}`" for i, v in enumerate(values)) + "\n"


EXPLANATIONS = [
    "The JSON lists this directly under the node entry.",
    "1. Locate the node in the topology.\n2. Read its publishers and subscribers.\n"
    "3. Compare the interface names.",
    "- The node entry was checked.\n- The relevant list contains the interface.",
    "Looking at the topology, we need to check the services of each node first.",
    "The message type std_msgs/msg/String is referenced in the topic entry.",
]


def response(question, text, tokens):
    return {
        "question_id": question["id"],
        "model_label": MODEL,
        "raw_text": text,
        "input_tokens": tokens[0],
        "output_tokens": tokens[1],
    }


def tokens_for(i):
    if i == 0:
        return (1000, 500)
    return (1400 + 37 * i, 90 + (53 * i) % 400)


def hand_written(questions):
    real = [q for q in questions if not (q["category"] == "ENTITY" and
                                         q["qtype"] == "BOOL" and
                                         not q["ground_truth"]["value"])]
    chosen = []
    for category, qtype, count in PICKS:
        pool = sorted((q for q in real if q["category"] == category and q["qtype"] == qtype),
                      key=lambda q: q["id"])
        if len(pool) < count:
            raise SystemExit(f"not enough {category}_{qtype} questions")
        chosen.extend(pool[:count])

    wrong = next(i for i, q in enumerate(chosen) if q["category"] == "PUBLISH"
                 and q["qtype"] == "BOOL")
    unclosed = next(i for i, q in enumerate(chosen) if q["category"] == "MESSAGE")

    out = []
    for i, q in enumerate(chosen):
        truth = q["ground_truth"]
        explanation = EXPLANATIONS[i % len(EXPLANATIONS)]
        if i == wrong:
            answer = "No" if truth["value"] else "Yes"
            text = f"<answer>{answer}</answer>\n<explanation>{explanation}</explanation>"
        elif i == unclosed:
            text = f"<answer>{styled_answer(truth, 0)}\n<explanation>{explanation}</explanation>"
        else:
            text = (f"<answer>{styled_answer(truth, i)}</answer>\n"
                    f"<explanation>{explanation}</explanation>")
        out.append(response(q, text, tokens_for(i)))
    return out


def all_correct(questions):
    return [
        response(q, f"<answer>{canonical(q['ground_truth'])}</answer>\n"
                    "<explanation>Read from the topology.</explanation>", (1200, 40))
        for q in questions
    ]


def write_jsonl(path, records):
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("questions", type=pathlib.Path, help="pubsub question set (seed 42)")
    parser.add_argument("out_dir", type=pathlib.Path)
    args = parser.parse_args()
    questions = json.loads(args.questions.read_text())["questions"]
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_jsonl(args.out_dir / "pubsub_30.jsonl", hand_written(questions))
    write_jsonl(args.out_dir / "pubsub_all_correct.jsonl", all_correct(questions))


if __name__ == "__main__":
    main()

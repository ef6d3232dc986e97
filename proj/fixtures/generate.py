#!/usr/bin/env python3
"""Writes the synthetic fixture corpus.

corpus/<doc>.tei.xml   TEI full texts. Figure, table, acknowledgement and
                       bibliography divisions carry sentinel strings that
                       must never reach a prompt.
scripts/<doc>.json     What the scripted model answers for the document,
                       plus injected faults (see tests/support).

Output is a pure function of SEED. Run from anywhere:
    python3 fixtures/generate.py
"""

import json
import random
from pathlib import Path
from xml.sax.saxutils import escape

SEED = 20240917
HERE = Path(__file__).resolve().parent
CATALOG = json.loads((HERE.parent / "data" / "catalog.json").read_text())
SDG = {g["id"]: g["short_name"] for g in CATALOG["sdgs"]}
PB = {b["id"]: b["short_name"] for b in CATALOG["pbs"]}

REGIONS = ["the Sahel", "coastal Bangladesh", "the Mekong delta", "southern Europe", "the Andes",
           "East Africa", "the Great Plains", "Southeast Asia", "the Baltic region", "Patagonia"]
METHODS = ["a panel regression", "household surveys", "remote-sensing time series",
           "a life-cycle assessment", "an integrated assessment model", "semi-structured interviews"]
SYNERGY = ["reduced pressure on", "eased", "improved the state of", "helped restore"]
TRADEOFF = ["increased pressure on", "worsened", "accelerated the transgression of", "degraded"]
FILLER = [
    "Data were collected between 2012 and 2019 and cleaned before analysis.",
    "The study area covers both rural and peri-urban districts.",
    "Results are robust to alternative model specifications.",
    "Stakeholder workshops were used to validate the scenarios.",
    "Uncertainty ranges are reported at the 95% level.",
    "Earlier work in the region focused mostly on short-term outcomes.",
]


def sentinel(kind, doc_id):
    return f"ZQX-SENTINEL-{kind}-{doc_id}"


def link_sentence(rng, sdg, pb, category):
    verb = rng.choice(SYNERGY if category == "synergy" else TRADEOFF)
    region = rng.choice(REGIONS)
    pct = rng.randint(5, 45)
    return (f"In {region}, measures for {SDG[sdg].lower()} {verb} {PB[pb].lower()}, "
            f"with a measured change of {pct} percent over the study period.")


def tei(doc_id, title, abstract, sections, extra_body=""):
    body = []
    for head, paras in sections:
        ps = "".join(f"<p>{escape(p)}</p>" for p in paras)
        body.append(f'<div><head>{escape(head)}</head>{ps}</div>')
    fig = sentinel("FIGURE", doc_id)
    tab = sentinel("TABLE", doc_id)
    ack = sentinel("ACK", doc_id)
    bib = sentinel("BIB", doc_id)
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<TEI xmlns="http://www.tei-c.org/ns/1.0">
  <teiHeader>
    <fileDesc>
      <titleStmt><title level="a" type="main">{escape(title)}</title></titleStmt>
      <publicationStmt><publisher>Fixture Press</publisher></publicationStmt>
      <sourceDesc><biblStruct><analytic><title>{escape(title)}</title></analytic></biblStruct></sourceDesc>
    </fileDesc>
    <profileDesc><abstract><p>{escape(abstract)}</p></abstract></profileDesc>
  </teiHeader>
  <text>
    <body>
      {''.join(body)}
      <figure xml:id="fig_0"><head>Figure 1</head><figDesc>{fig} Study area map.</figDesc></figure>
      <figure type="table"><head>Table 1</head><table><row><cell>{tab}</cell><cell>12.5</cell></row></table></figure>
      {extra_body}
    </body>
    <back>
      <div type="acknowledgement"><div><head>Acknowledgements</head><p>{ack} We thank the field teams.</p></div></div>
      <div type="references"><listBibl><biblStruct><analytic><title>{bib} Prior work on sustainability</title></analytic></biblStruct></listBibl></div>
    </back>
  </text>
</TEI>
"""


def make_doc(rng, doc_id, n_sdg, n_pb, linked_share=0.6, special=None):
    special = special or {}
    sdgs = special.get("sdgs") or sorted(rng.sample(range(1, 18), n_sdg))
    pbs = special.get("pbs") or sorted(rng.sample(range(1, 10), n_pb))
    verdicts, directions, labels, sentences = {}, {}, {}, []
    for s in sdgs:
        for p in pbs:
            if rng.random() >= linked_share:
                continue
            category = "trade-off" if rng.random() < 0.55 else "synergy"
            sentence = link_sentence(rng, s, p, category)
            sentences.append(sentence)
            key = f"SDG{s}-PB{p}"
            verdicts[key] = {"category": category,
                             "justification": f"The article reports that {SDG[s]} measures affect {PB[p]}.",
                             "evidence": sentence}
            directions[key] = "PB->SDG" if rng.random() < 0.65 else "SDG->PB"
            if category == "synergy":
                labels[key] = rng.choices(["Actual Synergy", "Misled by Positivity", "Generality"], [6, 2, 2])[0]
            else:
                labels[key] = rng.choices(["Actual Trade-off", "Double Negative (Co-Degradation)",
                                           "Generic Negative Association"], [5, 3, 2])[0]
    method = rng.choice(METHODS)
    topic = " and ".join(SDG[s] for s in sdgs[:2]) if sdgs else "regional development"
    title = f"{topic} under planetary pressures: evidence from {rng.choice(REGIONS)}"
    abstract = f"We study {topic.lower()} using {method}. {rng.choice(FILLER)}"
    paras = [rng.choice(FILLER) + " " + s for s in sentences] or [rng.choice(FILLER)]
    sections = [("Introduction", [rng.choice(FILLER), f"This paper uses {method}."]),
                ("Results", paras),
                ("Discussion", [rng.choice(FILLER)])]
    script = {"sdgs": sdgs, "pbs": pbs, "verdicts": verdicts, "directions": directions, "labels": labels}
    script.update({k: v for k, v in special.items() if k not in ("sdgs", "pbs")})
    return tei(doc_id, title, abstract, sections), script


SPECIAL = {
    # reply defects that a repair fixes
    "d03": {"faults": [{"stage": 3, "kind": "malformed", "times": 1}]},
    "d09": {"faults": [{"stage": 5, "kind": "illegal_label", "times": 1}]},
    "d17": {"faults": [{"stage": 4, "kind": "omit_pair", "times": 1}]},
    "d19": {"faults": [{"stage": 1, "kind": "bad_id", "times": 1}]},
    "d25": {"faults": [{"stage": 4, "kind": "conflict", "times": 1}]},
    # repair fails too, so does the full retry
    "d05": {"faults": [{"stage": 3, "kind": "unknown_category", "times": 3}]},
    "d07": {"faults": [{"stage": 5, "kind": "illegal_label", "times": 3}]},
    # the original fails, the repair fails, the retry of the original works
    "d29": {"faults": [{"stage": 2, "kind": "malformed", "times": 2}]},
    # transient backend trouble absorbed by the gateway's retries
    "d21": {"faults": [{"stage": 2, "kind": "http_500", "times": 2}]},
    "d31": {"faults": [{"stage": 3, "kind": "http_429", "times": 1}]},
    # benign formatting
    "d23": {"faults": [{"stage": 3, "kind": "fence", "times": 99}, {"stage": 5, "kind": "fence", "times": 99}]},
    # no goals found
    "d13": {"sdgs": [0], "pbs": [3]},
    # 25 candidate pairs: two batches in every pair stage
    "d15": {"sdgs": [2, 6, 7, 13, 15], "pbs": [1, 4, 5, 6, 7]},
}


def main():
    rng = random.Random(SEED)
    corpus = HERE / "corpus"
    scripts = HERE / "scripts"
    for d in (corpus, scripts):
        d.mkdir(exist_ok=True)
        for f in d.iterdir():
            f.unlink()
    for i in range(1, 33):
        doc_id = f"d{i:02d}"
        special = dict(SPECIAL.get(doc_id, {}))
        if special.get("sdgs") == [0]:
            special["sdgs"] = []
        n_sdg, n_pb = rng.randint(1, 3), rng.randint(1, 3)
        linked = 0.95 if doc_id == "d15" else 0.9 if doc_id in SPECIAL else 0.6
        xml, script = make_doc(rng, doc_id, n_sdg, n_pb, linked, special)
        if special.get("sdgs") == []:
            script.update(sdgs=[], verdicts={}, directions={}, labels={})
        if doc_id == "d11":
            # a quote that is not in the pruned text: downgraded to neutral
            key = next(iter(script["verdicts"]), None)
            if key is None:
                s, p = script["sdgs"][0], script["pbs"][0]
                key = f"SDG{s}-PB{p}"
                script["verdicts"][key] = {"category": "synergy", "justification": "Claimed link.",
                                           "evidence": ""}
                script["directions"][key] = "SDG->PB"
                script["labels"][key] = "Actual Synergy"
            script["verdicts"][key]["evidence"] = "A sentence that the article never contains."
        (corpus / f"{doc_id}.tei.xml").write_text(xml)
        (scripts / f"{doc_id}.json").write_text(json.dumps(script, indent=2, sort_keys=True) + "\n")
    # inputs that ingest must skip
    (corpus / "x_malformed.tei.xml").write_text("<TEI><text><body><p>unclosed</body></TEI>\n")
    (corpus / "x_not_tei.tei.xml").write_text("<html><body><p>not a TEI file</p></body></html>\n")


if __name__ == "__main__":
    main()

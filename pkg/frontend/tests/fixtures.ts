/** Canned analyses mirroring the live service's output for the reference
 * document (captured verbatim from the running API), so the fake service
 * speaks the same dialect as the real one.
 */

import type { FakeSentence } from "./fake_service.js";

export const DUNEDIN_SENTENCE =
  "Dunedin Podiatry requires an information system that allows entry and " +
  "retrieval of patient's details and their medical histories.";

export const ILL_FORMED_SENTENCE = "He see a car in the park.";

export const DUNEDIN_DOC_TEXT = `${DUNEDIN_SENTENCE} ${ILL_FORMED_SENTENCE}`;

export const DUNEDIN_TREE =
  '(S (NP (NOUN "Dunedin Podiatry")) (VP (VERB "requires") (NP (DET "an") ' +
  '(NOUN "information system")) (RELCL (REL "that") (VP (VERB "allows") ' +
  '(NP (NP (NP (NOUN "entry")) (CONJ "and") (NP (NOUN "retrieval"))) ' +
  '(PP (OF "of") (NP (NP (POSSADJ "patient\'s") (NOUN "details")) (CONJ "and") ' +
  '(NP (POSSADJ "their") (ADJ "medical") (NOUN "histories")))))))))';

export const GOLDEN_TREE =
  '(S (NP (DET "A") (NOUN "system")) (VP (VERB "requires") (NP (NP (NOUN "entry")) ' +
  '(PP (OF "of") (NP (POSSADJ "patient\'s") (NOUN "information"))))))';

export const DUNEDIN_ANALYSIS: FakeSentence[] = [
  {
    text: DUNEDIN_SENTENCE,
    tokens: [
      "Dunedin Podiatry",
      "requires",
      "an",
      "information system",
      "that",
      "allows",
      "entry",
      "and",
      "retrieval",
      "of",
      "patient's",
      "details",
      "and",
      "their",
      "medical",
      "histories",
    ],
    tree: DUNEDIN_TREE,
    tree_count: 2,
    terms: [
      { value: "Dunedin Podiatry", display: "Dunedin Podiatry" },
      { value: "information system", display: "information system" },
      { value: "entry", display: "entry" },
      { value: "retrieval", display: "retrieval" },
      { value: "details", display: "(patient's) details" },
      { value: "histories", display: "(their medical) histories" },
    ],
  },
  {
    text: ILL_FORMED_SENTENCE,
    tokens: ["He", "see", "a", "car", "in", "the", "park"],
    tree: null,
    tree_count: 0,
    terms: [],
  },
];

export function cannedAnalyses(): Map<string, FakeSentence[]> {
  return new Map([[DUNEDIN_DOC_TEXT, DUNEDIN_ANALYSIS]]);
}

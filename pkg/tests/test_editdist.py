import io
import random

import pytest

from oracles import (brute_optimal_alignments, naive_lev, random_table,
                     random_word)

from lingdist.editdist import (GAP, DistanceMatrix, alignments,
                               all_to_all_matrix, concept_matrix,
                               entry_distance, language_distance,
                               language_matrix, normalized_distance,
                               raw_distance, read_oc, write_oc)
from lingdist.errors import (BothEmpty, FormatError, IndexOutOfRange,
                             LimitExceeded, TooFewLanguages, UnknownLanguage)
from lingdist.lexicon import WordEntry, parse_lexicon
from lingdist.subst import SubstitutionTable, builtin_table

# the worked example's table: gap 1, f<->v 0.2, e<->o 0.2, everything else 1
EXAMPLE_TABLE = SubstitutionTable(
    classes={"close": 0.2},
    pair_rules=[("f", "v", "close"), ("e", "o", "close")])

WORKED_ALIGNMENT = ((GAP, "h"), ("o", "o"), ("v", "f"), ("e", GAP), ("r", GAP), ("a", "a"))


def test_golden_raw_distance():
    assert raw_distance("overa", "hofa", EXAMPLE_TABLE) == 3.2


def test_golden_normalized():
    assert normalized_distance("overa", "hofa", EXAMPLE_TABLE) == 0.64


def test_golden_alignments():
    found = alignments("overa", "hofa", EXAMPLE_TABLE)
    assert len(found) == 3
    assert WORKED_ALIGNMENT in [a.columns for a in found]
    for a in found:
        assert a.raw_cost == 3.2
        assert a.left_word() == "overa"
        assert a.right_word() == "hofa"


def test_alignment_order_is_pinned():
    found = alignments("overa", "hofa", EXAMPLE_TABLE)
    # gap-on-left sorts first, so the example alignment leads
    assert found[0].columns == WORKED_ALIGNMENT
    assert [a.columns for a in found] == [a.columns for a in alignments("overa", "hofa", EXAMPLE_TABLE)]


def test_identity_distance_and_alignment():
    table = builtin_table("editable")
    assert raw_distance("siks", "siks", table) == 0.0
    found = alignments("siks", "siks", table)
    assert len(found) == 1
    assert found[0].raw_cost == 0.0
    assert all(l == r for l, r in found[0].columns)


def test_empty_sequences():
    table = SubstitutionTable()
    assert raw_distance("", "abc", table) == 3.0
    assert raw_distance("abc", "", table) == 3.0
    assert raw_distance("", "", table) == 0.0
    assert normalized_distance("", "ab", table) == 1.0
    with pytest.raises(BothEmpty):
        normalized_distance("", "", table)


def test_kitten_sitting_unit_costs():
    table = SubstitutionTable()  # every mismatch 1, gap 1
    oracle = naive_lev("kitten", "sitting", table.cost, table.gap_penalty)
    assert oracle == 3.0
    assert raw_distance("kitten", "sitting", table) == oracle


def test_ab_ba_co_optimal_set_matches_brute_force():
    table = SubstitutionTable()
    expected, best = brute_optimal_alignments("ab", "ba", table.cost, table.gap_penalty)
    found = alignments("ab", "ba", table)
    assert {a.columns for a in found} == expected
    assert all(a.raw_cost == best == 2.0 for a in found)


def test_alignment_column_costs_sum_to_raw_cost():
    rng = random.Random(5)
    for _ in range(120):
        table = random_table(rng)
        a, b = random_word(rng), random_word(rng)
        total = raw_distance(a, b, table)
        for al in alignments(a, b, table, limit=5000):
            acc = 0.0
            for left, right in al.columns:
                if left is GAP or right is GAP:
                    acc += table.gap_penalty
                else:
                    acc += table.cost(left, right)
            assert acc == al.raw_cost == total


def test_limit_exceeded():
    with pytest.raises(LimitExceeded):
        alignments("overa", "hofa", EXAMPLE_TABLE, limit=2)
    with pytest.raises(ValueError):
        alignments("a", "b", EXAMPLE_TABLE, limit=0)


def test_oracle_equivalence_small():
    rng = random.Random(17)
    for _ in range(400):
        table = random_table(rng)
        a, b = random_word(rng), random_word(rng)
        assert raw_distance(a, b, table) == naive_lev(a, b, table.cost, table.gap_penalty)


def test_raw_distance_symmetry():
    rng = random.Random(23)
    for _ in range(200):
        table = random_table(rng)
        a, b = random_word(rng), random_word(rng)
        assert raw_distance(a, b, table) == raw_distance(b, a, table)


def test_normalized_distance_bounded():
    rng = random.Random(67)
    for _ in range(200):
        table = random_table(rng)
        a, b = random_word(rng), random_word(rng)
        if not a and not b:
            continue
        bound = max(table.gap_penalty, table.default_mismatch)
        assert 0.0 <= normalized_distance(a, b, table) <= bound + 1e-12


def _dyadic_table(rng):
    # costs are multiples of 0.25, so every path cost is exact in binary
    # floating point and co-optimality is unambiguous across methods
    pair_rules = []
    for i, x in enumerate("abcd"):
        for y in "abcd"[i + 1:]:
            if rng.random() < 0.7:
                pair_rules.append((x, y, rng.choice((0.0, 0.25, 0.5, 0.75, 1.0))))
    return SubstitutionTable(pair_rules=pair_rules,
                             gap_penalty=rng.choice((0.5, 1.0, 1.5)))


def test_alignments_match_brute_force_random():
    rng = random.Random(79)
    for _ in range(80):
        table = _dyadic_table(rng)
        a = random_word(rng, alphabet="abcd", max_len=4)
        b = random_word(rng, alphabet="abcd", max_len=4)
        expected, best = brute_optimal_alignments(a, b, table.cost, table.gap_penalty)
        got = alignments(a, b, table, limit=100000)
        assert {al.columns for al in got} == expected
        assert all(al.raw_cost == best for al in got)


def test_entry_distance_min_over_variants():
    table = builtin_table("editable")
    e1 = WordEntry(("melyna", "zhydra"))
    e2 = WordEntry(("sinij", "goluboj"))
    expected = min(normalized_distance(v1, v2, table)
                   for v1 in e1.variants for v2 in e2.variants)
    assert entry_distance(e1, e2, table) == expected
    assert entry_distance(WordEntry(("x",)), WordEntry(("x",)), table) == 0.0


def test_entry_distance_synonym_example():
    table = builtin_table("editable")
    d = entry_distance(WordEntry(("blu", "azzurro")), WordEntry(("blue",)), table)
    assert d == min(normalized_distance("blu", "blue", table),
                    normalized_distance("azzurro", "blue", table))


LEX3 = parse_lexicon(
    "numbers(romani,[iek,dui,trin]).\n"
    "numbers(english,[wun,too,three]).\n"
    "numbers(french,[un,de,troi]).\n")


def test_language_distance_identical_and_unknown():
    table = builtin_table("editable")
    lex = parse_lexicon("n(a,[pat,ko]).\nn(b,[pat,ko]).")
    assert language_distance(lex, "a", "b", table) == 0.0
    with pytest.raises(UnknownLanguage):
        language_distance(lex, "a", "nope", table)


def test_language_distance_is_mean_of_entry_distances():
    table = builtin_table("editable")
    per_concept = [
        entry_distance(LEX3.entries["romani"][c], LEX3.entries["english"][c], table)
        for c in range(3)]
    expected = sum(per_concept) / 3
    got = language_distance(LEX3, "romani", "english", table)
    assert got == pytest.approx(expected, abs=1e-15)


def test_language_distance_single_concept_equals_entry():
    table = builtin_table("editable")
    lex = parse_lexicon("n(a,[kelo]).\nn(b,[kilo]).")
    assert language_distance(lex, "a", "b", table) == \
        entry_distance(WordEntry(("kelo",)), WordEntry(("kilo",)), table)


def test_language_distance_concept_order_invariance():
    table = builtin_table("editable")
    lex1 = parse_lexicon("n(a,[pat,ko,mu]).\nn(b,[bat,go,nu]).")
    lex2 = parse_lexicon("n(a,[mu,pat,ko]).\nn(b,[nu,bat,go]).")
    assert language_distance(lex1, "a", "b", table) == \
        language_distance(lex2, "a", "b", table)


def test_language_matrix():
    table = builtin_table("editable")
    m = language_matrix(LEX3, table)
    assert m.labels == ["romani", "english", "french"]
    for i in range(3):
        assert m.values[i][i] == 0.0
        for j in range(3):
            assert m.values[i][j] == m.values[j][i]
    assert m.get("romani", "english") == \
        language_distance(LEX3, "romani", "english", table)
    with pytest.raises(TooFewLanguages):
        language_matrix(parse_lexicon("n(a,[x])."), table)


def test_language_matrix_relabeling():
    table = builtin_table("editable")
    text = "numbers({},[iek,dui,trin]).\nnumbers({},[wun,too,three]).\nnumbers({},[un,de,troi])."
    m1 = language_matrix(parse_lexicon(text.format("ro", "en", "fr")), table)
    m2 = language_matrix(parse_lexicon(text.format("fr2", "ro2", "en2")), table)
    # same words in the same slots, so the grids agree cell for cell
    assert m1.values == m2.values


def test_concept_matrix():
    table = builtin_table("editable")
    m = concept_matrix(LEX3, 1, table)
    assert m.labels == ["romani", "english", "french"]
    expected = entry_distance(LEX3.entries["english"][1], LEX3.entries["french"][1], table)
    assert m.get("english", "french") == expected
    with pytest.raises(IndexOutOfRange):
        concept_matrix(LEX3, 3, table)
    with pytest.raises(IndexOutOfRange):
        concept_matrix(LEX3, -1, table)


def test_all_to_all_matrix():
    table = builtin_table("editable")
    lex = parse_lexicon("n(a,[pat,ko,mu]).\nn(b,[bat,go,nu]).")
    m = all_to_all_matrix(lex, table)
    assert m.n == 6
    assert m.labels[:3] == ["a:w1", "a:w2", "a:w3"]
    assert all(m.values[i][i] == 0.0 for i in range(6))
    # spot-check a cross-concept cell against a direct recomputation
    expected = entry_distance(lex.entries["a"][0], lex.entries["b"][2], table)
    assert m.get("a:w1", "b:w3") == expected
    with pytest.raises(TooFewLanguages):
        all_to_all_matrix(parse_lexicon(""), table)


def test_distance_matrix_validation():
    with pytest.raises(ValueError):
        DistanceMatrix(["a", "b"], [[0.0, 1.0], [0.9, 0.0]])  # asymmetric
    with pytest.raises(ValueError):
        DistanceMatrix(["a", "b"], [[0.1, 1.0], [1.0, 0.0]])  # nonzero diagonal
    with pytest.raises(ValueError):
        DistanceMatrix(["a", "a"], [[0.0, 1.0], [1.0, 0.0]])  # duplicate labels


def test_oc_round_trip():
    rng = random.Random(3)
    for n in (1, 2, 3, 7):
        labels = [f"item{i}" for i in range(n)]
        values = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.uniform(0.0, 2.0)
                values[i][j] = v
                values[j][i] = v
        m = DistanceMatrix(labels, values)
        text = write_oc(m, io.StringIO())
        m2 = read_oc(io.StringIO(text))
        assert m2.labels == m.labels
        for i in range(n):
            for j in range(n):
                assert m2.values[i][j] == pytest.approx(m.values[i][j], abs=5e-7)
        # a second write emits identical bytes
        assert write_oc(m2, io.StringIO()) == write_oc(m2, io.StringIO())


def test_oc_2x2_exact_text():
    m = DistanceMatrix(["A", "B"], [[0.0, 0.25], [0.25, 0.0]])
    assert write_oc(m, io.StringIO()) == "2\nA\nB\n0.250000\n"


@pytest.mark.parametrize("bad", [
    "",                              # empty
    "x\nA\nB\n0.1\n",                # non-numeric count
    "3\nA\nB\n0.1\n",                # too few lines
    "2\nA\nB\n0.1 0.2\n",            # wrong cell count
    "2\nA\nB\nfoo\n",                # non-numeric cell
    "2\nA\nB\n-0.5\n",               # negative distance
    "2\nA B\nC\n0.1\n",              # whitespace in label
])
def test_oc_format_errors(bad):
    with pytest.raises(FormatError):
        read_oc(io.StringIO(bad))


def test_oc_write_rejects_bad_labels():
    m = DistanceMatrix(["a b", "c"], [[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(FormatError):
        write_oc(m, io.StringIO())

import itertools
import json
import random

import pytest

from relfd import rel
from relfd.errors import CarrierMismatchError, ParseError, QueryTypeError
from relfd.fd import parse_fd
from relfd.query import (Compose, Converse, Env, Fork, Kernel, Pid, Proj,
                         RelRef, UnionOp, count_pid_nodes, eval_query,
                         from_json, rewrite_selfjoin, to_json, type_check,
                         verify_equiv)
from relfd.rel import Atom, Tup, identity
from relfd.tables import Table, parse_table_csv, row_carrier

from conftest import FIXTURES, carrier

TITLE_DIRECTOR = [parse_fd("Title -> Director")]


def movies_env(path="movies.csv"):
    table = parse_table_csv((FIXTURES / path).read_text())
    return Env(tables={"movies": table})


def movies_query():
    return from_json(json.loads((FIXTURES / "movies_query.json").read_text()))


def optimized_query():
    return Compose(Compose(Proj("movies", frozenset({"Director"})),
                           Pid("movies")),
                   Converse(Proj("movies", frozenset({"Actor"}))))


def sub(*names):
    return Tup(tuple(Atom(n) for n in names))


# ---------------------------------------------------------------------------
# wire form


def test_json_round_trip():
    e = movies_query()
    assert from_json(to_json(e)) == e
    e2 = UnionOp(Fork(RelRef("r"), RelRef("s")), Fork(RelRef("r"),
                                                      RelRef("s")))
    assert from_json(to_json(e2)) == e2


def test_json_nary_compose_folds_left():
    obj = {"op": "compose", "args": [{"op": "rel", "name": "a"},
                                     {"op": "rel", "name": "b"},
                                     {"op": "rel", "name": "c"}]}
    assert from_json(obj) == Compose(Compose(RelRef("a"), RelRef("b")),
                                     RelRef("c"))


def test_json_rejects_malformed_nodes():
    with pytest.raises(ParseError):
        from_json({"op": "compose", "args": [{"op": "rel", "name": "a"}]})
    with pytest.raises(ParseError):
        from_json({"op": "proj", "scheme": "m", "attrs": []})
    with pytest.raises(ParseError):
        from_json({"op": "launch"})
    with pytest.raises(ParseError):
        from_json(["not", "a", "node"])


# ---------------------------------------------------------------------------
# type checking


def test_type_check_assigns_carriers():
    env = movies_env()
    src, tgt = type_check(movies_query(), env)
    rc = row_carrier(env.tables["movies"])
    assert src.name.startswith("rows(") and len(src) == 2  # Actor sub-rows
    assert len(tgt) == 2  # Director sub-rows
    assert type_check(Pid("movies"), env) == (rc, rc)


def test_type_check_reports_unbound_name_with_path():
    with pytest.raises(QueryTypeError) as err:
        type_check(Compose(RelRef("nope"), Pid("movies")), Env())
    assert "compose.args[0]" in str(err.value)
    assert "nope" in str(err.value)


def test_type_check_reports_carrier_mismatch_with_path():
    a, b = carrier("A", 2), carrier("B", 2)
    env = Env(rels={"r": rel.top(a, b), "s": rel.top(a, b)})
    with pytest.raises(QueryTypeError) as err:
        eval_query(Compose(RelRef("r"), RelRef("s")), env)
    assert "query" in err.value.path


# ---------------------------------------------------------------------------
# evaluation


def test_eval_movies_query_expected_pairs():
    env = movies_env()
    out = eval_query(movies_query(), env)
    assert out.pairs == frozenset({
        (sub("a1"), sub("d1")),
        (sub("a2"), sub("d1")),
        (sub("a1"), sub("d2")),
    })


def test_eval_compose_with_bound_identity():
    a, b = carrier("A", 2), carrier("B", 2)
    r = rel.top(a, b)
    env = Env(rels={"R": r, "I": identity(a)})
    assert eval_query(Compose(RelRef("R"), RelRef("I")), env) == r


def test_eval_empty_table_gives_empty_relation():
    table = parse_table_csv("Title,Director,Actor\n",
                            {"Title": ("t1",), "Director": ("d1",),
                             "Actor": ("a1",)})
    env = Env(tables={"movies": table})
    assert eval_query(movies_query(), env).pairs == frozenset()


def _comprehension_oracle(table):
    # the self-join as a set comprehension over raw rows
    out = set()
    for t1 in table.rows:
        for t2 in table.rows:
            if t1.items[0] == t2.items[0]:
                out.add((sub(t2.items[2].name), sub(t1.items[1].name)))
    return out


def test_eval_agrees_with_comprehension_oracle_exhaustively():
    dom = {"Title": ("0", "1"), "Director": ("0", "1"), "Actor": ("0", "1")}
    base = parse_table_csv("Title,Director,Actor\n", dom)
    universe = row_carrier(base).elements
    q = movies_query()
    for k in range(0, 4):
        for combo in itertools.combinations(universe, k):
            table = Table(base.scheme, frozenset(combo))
            env = Env(tables={"movies": table})
            assert eval_query(q, env).pairs == frozenset(
                _comprehension_oracle(table))


# ---------------------------------------------------------------------------
# rewriting


def test_rewrite_eliminates_enabled_self_join():
    out = rewrite_selfjoin(movies_query(), TITLE_DIRECTOR)
    assert out == optimized_query()
    assert count_pid_nodes(out) == 1


def test_rewrite_without_enabling_fd_is_identity():
    q = movies_query()
    assert rewrite_selfjoin(q, []) is q
    assert rewrite_selfjoin(q, [parse_fd("Director -> Actor")]) is q


def test_rewrite_symmetric_enablement():
    out = rewrite_selfjoin(movies_query(), [parse_fd("Title -> Actor")])
    assert out == optimized_query()
    table = parse_table_csv(
        "Title,Director,Actor\nt1,d1,a1\nt2,d2,a1\nt2,d2,a2\n")
    env = Env(tables={"movies": table})
    assert verify_equiv(movies_query(), out, env)


def test_rewrite_is_idempotent_and_never_adds_pids():
    q = movies_query()
    once = rewrite_selfjoin(q, TITLE_DIRECTOR)
    assert rewrite_selfjoin(once, TITLE_DIRECTOR) == once
    assert count_pid_nodes(once) <= count_pid_nodes(q)


def test_rewrite_handles_nested_chains():
    inner = movies_query()
    env = movies_env()
    merged = UnionOp(inner, optimized_query())
    out = rewrite_selfjoin(merged, TITLE_DIRECTOR)
    assert out == UnionOp(optimized_query(), optimized_query())
    assert verify_equiv(merged, out, env)
    wrapped = Kernel(Converse(inner))
    out2 = rewrite_selfjoin(wrapped, TITLE_DIRECTOR)
    assert count_pid_nodes(out2) == 1
    assert verify_equiv(wrapped, out2, env)


def test_rewrite_normalizes_pid_identities():
    doubled = Compose(Converse(Pid("movies")), Pid("movies"))
    q = Compose(Compose(Compose(Proj("movies", frozenset({"Director"})),
                                doubled),
                        Kernel(Proj("movies", frozenset({"Title"})))),
                Compose(Pid("movies"),
                        Converse(Proj("movies", frozenset({"Actor"})))))
    out = rewrite_selfjoin(q, TITLE_DIRECTOR)
    assert out == optimized_query()
    assert verify_equiv(q, out, movies_env())


def test_rewrite_requires_matching_table_names():
    q = movies_query()
    chain = Compose(q, Converse(Pid("other")))
    out = rewrite_selfjoin(chain, TITLE_DIRECTOR)
    assert count_pid_nodes(out) == 2  # inner window still fires


# ---------------------------------------------------------------------------
# verification


def test_verify_equal_expressions():
    env = movies_env()
    q = movies_query()
    assert verify_equiv(q, q, env)


def test_verify_returns_pinned_witness_on_violation():
    env = movies_env("movies_violating.csv")
    out = rewrite_selfjoin(movies_query(), TITLE_DIRECTOR)
    result = verify_equiv(movies_query(), out, env)
    assert not result
    assert result.witness == (sub("a2"), sub("d1"))


def test_verify_rejects_differently_typed_expressions():
    env = movies_env()
    with pytest.raises(CarrierMismatchError):
        verify_equiv(Pid("movies"),
                     Proj("movies", frozenset({"Title"})), env)


def test_type_check_predicts_eval_carriers_on_random_expressions():
    rnd = random.Random(13)
    env = movies_env()
    table = env.tables["movies"]
    names = table.scheme.names
    pool = [Pid("movies")]
    pool += [Proj("movies", frozenset(c))
             for k in (1, 2) for c in itertools.combinations(names, k)]
    typed = [(e, type_check(e, env)) for e in pool]
    for _ in range(250):
        op = rnd.choice(["converse", "kernel", "compose", "union", "fork"])
        e1, (s1, t1) = rnd.choice(typed)
        if op == "converse":
            candidate = Converse(e1)
        elif op == "kernel":
            candidate = Kernel(e1)
        else:
            e2, (s2, t2) = rnd.choice(typed)
            if op == "compose" and t2 == s1:
                candidate = Compose(e1, e2)
            elif op == "union" and (s1, t1) == (s2, t2):
                candidate = UnionOp(e1, e2)
            elif op == "fork" and s1 == s2:
                candidate = Fork(e1, e2)
            else:
                continue
        typed.append((candidate, type_check(candidate, env)))
    assert len(typed) > 100
    for e, (src, tgt) in typed:
        out = eval_query(e, env)
        assert (out.source, out.target) == (src, tgt)


def test_rewrite_soundness_randomized_1000():
    rnd = random.Random(0)
    titles = ["t1", "t2", "t3"]
    directors = ["d1", "d2", "d3"]
    actors = ["a1", "a2", "a3"]
    q = movies_query()
    for _ in range(1000):
        # build a table satisfying Title -> Director by construction
        director_of = {t: rnd.choice(directors) for t in titles}
        n = rnd.randint(0, 20)
        rows = {(t := rnd.choice(titles), director_of[t], rnd.choice(actors))
                for _ in range(n)}
        csv_text = "Title,Director,Actor\n" + "".join(
            ",".join(r) + "\n" for r in rows)
        table = parse_table_csv(csv_text)
        env = Env(tables={"movies": table})
        out = rewrite_selfjoin(q, TITLE_DIRECTOR)
        assert verify_equiv(q, out, env)

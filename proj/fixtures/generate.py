"""Writes the JSON fixtures. Run from the repository root."""

import itertools
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent


def graph(nodes, edges=(), types=None, polarity=None):
    out_nodes = []
    for n in sorted(nodes):
        node = {"id": n}
        if types is not None:
            node["type"] = types[n]
        if polarity is not None:
            node["polarity"] = polarity.get(n, [])
        out_nodes.append(node)
    out_edges = []
    for e in sorted(edges, key=lambda e: e[0]):
        edge = {"id": e[0], "src": e[1], "tgt": e[2]}
        if len(e) > 3:
            edge["type"] = e[3]
        out_edges.append(edge)
    return {"nodes": out_nodes, "edges": out_edges}


def arrow(nodes, edges=None):
    return {"nodes": dict(sorted(nodes.items())), "edges": dict(sorted((edges or {}).items()))}


def identity(g):
    return arrow({n["id"]: n["id"] for n in g["nodes"]}, {e["id"]: e["id"] for e in g["edges"]})


def write(path, doc):
    target = ROOT / path
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def delete_and_clone():
    g = graph(["a", "v", "b"], [("av", "a", "v"), ("vb", "v", "b")])
    write("clone/G.json", g)
    lhs = graph(["v"])
    empty = graph([])
    write("clone/delete_sqpo.json", {
        "mode": "sqpo", "L": lhs, "K": empty, "R": empty,
        "l": arrow({}), "r": arrow({}),
    })
    k = graph(["k0", "k1"])
    r = graph(["v", "c"])
    clone_l = arrow({"k0": "v", "k1": "v"})
    clone_r = arrow({"k0": "v", "k1": "c"})
    write("clone/clone_sqpo.json", {
        "mode": "sqpo", "L": lhs, "K": k, "R": r, "l": clone_l, "r": clone_r,
    })
    write("clone/clone_psqpo.json", {
        "mode": "psqpo", "L": lhs, "K": k, "R": r, "l": clone_l, "r": clone_r,
        "polarity": {"plus": ["k0", "k1"], "minus": ["k0"]},
    })
    # T_K for the outgoing-only clone: star edges for (N+ + *) x (N- + *)
    # with N+ = {k0, k1} and N- = {k0}.
    pairs = [(s, t) for s in ["k0", "k1", "*"] for t in ["k0", "*"]]
    tk = graph(["k0", "k1", "*"], [(f"*({s},{t})", s, t) for s, t in pairs])
    write("clone/clone_agree.json", {
        "mode": "agree", "L": lhs, "K": k, "R": r, "TK": tk,
        "l": clone_l, "r": clone_r, "t": arrow({"k0": "k0", "k1": "k1"}),
    })
    write("clone/identity_sqpo.json", {
        "mode": "sqpo", "L": lhs, "K": lhs, "R": lhs,
        "l": identity(lhs), "r": identity(lhs),
    })
    write("clone/match.json", arrow({"v": "v"}))
    write("clone/match_v.json", {
        "source": lhs, "target": g, **arrow({"v": "v"}),
    })
    write("clone/clone_l.json", {
        "source": k, "target": lhs, **clone_l,
    })


def web_copy():
    tg = graph(["Page"], [("link", "Page", "Page"), ("sub", "Page", "Page")])
    page = lambda ids: {i: "Page" for i in ids}
    lhs = graph(["p"], types=page(["p"]))
    k = graph(["p", "pc"], types=page(["p", "pc"]))
    # T({p}) around the original, plus the single out-link slot of the copy.
    star = "*:Page"
    edges = []
    for s, t in itertools.product(["p", star], repeat=2):
        for ty in ["link", "sub"]:
            edges.append((f"*({s},{t}):{ty}", s, t, ty))
    edges.append(("copy-link", "pc", star, "link"))
    tk = graph(["p", "pc", star], edges, types=page(["p", "pc", star]))
    write("webcopy/rule.json", {
        "mode": "agree", "typegraph": tg, "L": lhs, "K": k, "R": k, "TK": tk,
        "l": arrow({"p": "p", "pc": "p"}), "r": identity(k),
        "t": arrow({"p": "p", "pc": "pc"}),
    })
    g = graph(
        ["home", "p", "b", "c", "s"],
        [
            ("home-p", "home", "p", "link"),
            ("b-p", "b", "p", "link"),
            ("p-b", "p", "b", "link"),
            ("p-c", "p", "c", "link"),
            ("p-s", "p", "s", "sub"),
            ("home-sub-p", "home", "p", "sub"),
        ],
        types=page(["home", "p", "b", "c", "s"]),
    )
    write("webcopy/G.json", g)
    write("webcopy/match.json", arrow({"p": "p"}))
    write("webcopy/typegraph.json", tg)


def anonymization():
    tg = graph(
        ["User", "Admin", "Square"],
        [
            ("public", "User", "User"),
            ("private", "User", "User"),
            ("knows", "Admin", "User"),
            ("marks", "Square", "User"),
        ],
    )
    users = ["u1", "u2", "u3", "u4"]
    clones = ["c1", "c2", "c3", "c4"]
    lhs = graph(users, types={u: "User" for u in users})
    k_types = {n: "User" for n in users + clones}
    k = graph(users + clones, types=k_types)

    # T(L) around the originals, and a public clique among the clones.
    stars = {"User": "*:User", "Admin": "*:Admin", "Square": "*:Square"}
    tk_types = dict(k_types)
    tk_types.update({v: t for t, v in stars.items()})
    signature = {e["id"]: (e["src"], e["tgt"]) for e in tg["edges"]}
    side = users + list(stars.values())
    edges = []
    for s, t in itertools.product(side, repeat=2):
        for ty, (st, tt) in signature.items():
            if tk_types[s] == st and tk_types[t] == tt:
                edges.append((f"*({s},{t}):{ty}", s, t, ty))
    for a, b in itertools.permutations(range(4), 2):
        edges.append((f"clone-public-{a + 1}{b + 1}", clones[a], clones[b], "public"))
    tk = graph(users + clones + list(stars.values()), edges, types=tk_types)

    r_types = dict(k_types)
    r_types["q"] = "Square"
    r = graph(users + clones + ["q"],
              [(f"mark-{c}", "q", c, "marks") for c in clones], types=r_types)

    write("anonymize/rule.json", {
        "mode": "agree", "typegraph": tg, "L": lhs, "K": k, "R": r, "TK": tk,
        "l": arrow({**{u: u for u in users}, **{c: u for c, u in zip(clones, users)}}),
        "r": identity(k), "t": identity(k),
    })
    g_types = {u: "User" for u in ["u0"] + users}
    g_types["admin"] = "Admin"
    g = graph(
        list(g_types),
        [
            ("pub-12", "u1", "u2", "public"),
            ("pub-23", "u2", "u3", "public"),
            ("pub-34", "u3", "u4", "public"),
            ("pub-41", "u4", "u1", "public"),
            ("pub-01", "u0", "u1", "public"),
            ("pub-30", "u3", "u0", "public"),
            ("priv-13", "u1", "u3", "private"),
            ("priv-24", "u2", "u4", "private"),
            ("knows-1", "admin", "u1", "knows"),
            ("knows-2", "admin", "u2", "knows"),
        ],
        types=g_types,
    )
    write("anonymize/G.json", g)
    write("anonymize/match.json", arrow({u: u for u in users}))


def nonlocal_deletion():
    tg = graph(["elt"])
    x = graph(["x"], types={"x": "elt"})
    write("nonlocal/rule.json", {
        "mode": "agree", "typegraph": tg, "L": x, "K": x, "R": x, "TK": x,
        "l": identity(x), "r": identity(x), "t": identity(x),
    })
    write("nonlocal/G.json", graph(["x", "y", "z"], types={n: "elt" for n in "xyz"}))


if __name__ == "__main__":
    delete_and_clone()
    web_copy()
    anonymization()
    nonlocal_deletion()

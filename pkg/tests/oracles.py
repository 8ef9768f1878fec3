"""Slow, literal reference versions of the niching procedures used as test oracles."""


def hamming(a, b):
    return sum(x != y for x, y in zip(a, b))


def clearing_oracle(genomes, fitness, radius, cap):
    """Line-by-line clearing on plain lists.

    Returns ``(winners, cleared)``: the index sets of members that end up as
    niche centres and of members whose fitness was set to zero.
    """
    order = sorted(range(len(fitness)), key=lambda i: -fitness[i])  # sorted() is stable
    fit = {i: fitness[i] for i in order}
    winners, cleared = set(), set()
    for a, i in enumerate(order):
        if fit[i] > 0:
            winners.add(i)
            num_winners = 1
            for j in order[a + 1:]:
                if fit[j] > 0 and hamming(genomes[i], genomes[j]) < radius:
                    if num_winners < cap:
                        num_winners += 1
                    else:
                        fit[j] = 0
                        cleared.add(j)
    return winners, cleared, [fit[i] for i in range(len(fitness))]


def crowding_oracle(p1, p2, c1, c2, f):
    """One round of deterministic crowding for a single parent pair.

    ``f`` maps each of the four genomes' labels to fitness. Returns the
    labels that occupy the two parent slots afterwards.
    """
    genomes = {"p1": p1, "p2": p2, "c1": c1, "c2": c2}
    d = lambda a, b: hamming(genomes[a], genomes[b])  # noqa: E731
    slot1, slot2 = "p1", "p2"
    if d("p1", "c1") + d("p2", "c2") <= d("p1", "c2") + d("p2", "c1"):
        if f["c1"] > f["p1"]:
            slot1 = "c1"
        if f["c2"] > f["p2"]:
            slot2 = "c2"
    else:
        if f["c2"] > f["p1"]:
            slot1 = "c2"
        if f["c1"] > f["p2"]:
            slot2 = "c1"
    return slot1, slot2

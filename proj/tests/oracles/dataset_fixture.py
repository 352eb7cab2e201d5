"""Writes tests/fixtures/dataset/sample.csv and prints its statistics.

Statistics come from the declared operator column and plain step counting,
not from the toolkit's classifier. Run:
    python3 tests/oracles/dataset_fixture.py
"""
import csv
import io
import os
from collections import Counter

ROWS = [
    ("ATIS_train_1", "I would like a flight from Toronto to San Diego please.",
     "return flights ;return #1 from Toronto ;return #2 to San Diego", "select filter filter"),
    ("ATIS_train_2", "what flights go from dallas to boston on monday",
     "return flights ;return #1 from dallas ;return #2 to boston ;return #3 on monday", "select filter filter filter"),
    ("ATIS_dev_3", "how many flights leave denver",
     "return flights ;return #1 that leave denver ;return the number of #2", "select filter aggregate"),
    ("ATIS_dev_4", "list the cheapest fare from atlanta to pittsburgh",
     "return fares ;return #1 from atlanta ;return #2 to pittsburgh ;return the lowest of #3", "select filter filter aggregate"),
    ("GEO_train_5", "How many states border Colorado?",
     "return Colorado ;return border states of #1 ;return the number of #2", "select project aggregate"),
    ("GEO_train_6", "what is the capital of texas",
     "return texas ;return the capital of #1", "select project"),
    ("GEO_dev_7", "which state has the largest population",
     "return states ;return populations of #1 ;return #1 where #2 is highest", "select project superlative"),
    ("GEO_dev_8", "what rivers run through states bordering ohio",
     "return ohio ;return states bordering #1 ;return rivers of #2", "select project project"),
    ("SPIDER_train_9", "How many female students are there in each club?",
     "return clubs ;return female students of #1 ;return the number of #2 for each #1", "select project group"),
    ("SPIDER_train_10", "Who are the authors who have more than 500 papers?",
     "return authors ;return papers of #1 ;return the number of #2 for each #1 ;return #1 where #3 is more than 500",
     "select project group comparative"),
    ("SPIDER_dev_11", "Find the professors who are not playing Canoeing.",
     "return professors ;return #1 playing Canoeing ;return #1 besides #2", "select filter discard"),
    ("SPIDER_dev_12", "Find all information about student addresses, and sort by monthly rental.",
     "return students ;return addresses of #1 ;return monthly rental of #2 ;return #2 sorted by #3",
     "select project project sort"),
    ("SPIDER_train_13", "Show the parties that have representatives in both New York state and representatives in Pennsylvania state.",
     "return representatives ;return #1 in New York state ;return #1 in Pennsylvania state ;return parties in both #2 and #3",
     "select filter filter intersection"),
    ("SPIDER_train_14", "What is the average age of all singers?",
     "return singers ;return ages of #1 ;return the average of #2", "select project aggregate"),
    ("SPIDER_dev_15", "List the names of all employees.",
     "return employees ;return names of #1", "select project"),
    ("SPIDER_dev_16", "What are the ids of the problems reported after 1978?",
     "return problems ;return #1 reported after 1978 ;return ids of #2", "select filter project"),
    ("ACADEMIC_train_17", "return me the number of papers by H. V. Jagadish .",
     "return H. V. Jagadish ;return papers by #1 ;return the number of #2", "select project aggregate"),
    ("ACADEMIC_train_18", "What is the keyword, which has been contained by the most number of papers?",
     "return papers ;return keywords of #1 ;return the number of #1 for each #2 ;return #2 where #3 is highest",
     "select project group superlative"),
    ("ACADEMIC_dev_19", "return me the authors who have papers in VLDB conference",
     "return VLDB conference ;return papers in #1 ;return authors of #2", "select project project"),
    ("ACADEMIC_dev_20", "return me the homepage of PVLDB",
     "return PVLDB ;return the homepage of #1", "select project"),
    ("CLEVR_train_21", "How many more red objects are there than blue objects?",
     "return red objects ;return blue objects ;return the number of #1 ;return the number of #2 ;return the difference of #3 and #4",
     "select select aggregate aggregate arithmetic"),
    ("CLEVR_train_22", "Are there more cubes than spheres?",
     "return cubes ;return spheres ;return the number of #1 ;return the number of #2 ;return if #3 is higher than #4",
     "select select aggregate aggregate boolean"),
    ("CLEVR_dev_23", "What color is the large metal sphere?",
     "return spheres ;return #1 that are large ;return #2 that are metal ;return color of #3",
     "select filter filter project"),
    ("CLEVR_dev_24", "How many objects are either cubes or cylinders?",
     "return cubes ;return cylinders ;return #1 , #2 ;return the number of #3", "select select union aggregate"),
    ("CLEVR_train_25", "Is the number of green things the same as the number of brown things?",
     "return green things ;return brown things ;return the number of #1 ;return the number of #2 ;return if #3 is the same as #4",
     "select select aggregate aggregate boolean"),
    ("NLVR2_train_26", "If there are exactly two dogs in the left image.",
     "return left image ;return dogs in #1 ;return the number of #2 ;return if #3 is equal to two",
     "select project aggregate boolean"),
    ("NLVR2_dev_27", "One image shows a single bird.",
     "return images ;return birds in #1 ;return the number of #2 for each #1 ;return #1 where #3 is equal to one ;return the number of #4 ;return if #5 is equal to one",
     "select project group comparative aggregate boolean"),
    ("COMQA_train_28", "Who is the head coach of the Los Angeles Lakers?",
     "return the Los Angeles Lakers ;return the head coach of #1", "select project"),
    ("COMQA_train_29", "what year did the eagles win the super bowl",
     "return the eagles ;return super bowl wins of #1 ;return year of #2", "select project project"),
    ("COMQA_dev_30", "Tell me who the president and vice-president are?",
     "return the president ;return the vice-president ;return #1 , #2", "select select union"),
    ("CWQ_train_31", "What team with Baltimore Fight Song did Tim Howard play for?",
     "return teams ;return #1 with Baltimore Fight Song ;return #2 Tim Howard played for", "select filter filter"),
    ("CWQ_train_32", "Which country bordering Mexico has the largest population?",
     "return Mexico ;return countries bordering #1 ;return populations of #2 ;return #2 where #3 is highest",
     "select project project superlative"),
    ("CWQ_dev_33", "What is the smallest state bordering ohio?",
     "return ohio ;return states bordering #1 ;return sizes of #2 ;return #2 where #3 is lowest",
     "select project project superlative"),
    ("CWQ_dev_34", "Who has a capital city called Khartoum and trades with China?",
     "return countries ;return #1 with a capital city called Khartoum ;return #2 that trades with China",
     "select filter filter"),
    ("DROP_train_35", "How many touchdowns were scored overall?",
     "return touchdowns ;return the number of #1", "select aggregate"),
    ("DROP_train_36", "How many yards longer was the longest field goal than the shortest?",
     "return field goals ;return yards of #1 ;return the highest of #2 ;return the lowest of #2 ;return the difference of #3 and #4",
     "select project aggregate aggregate arithmetic"),
    ("DROP_dev_37", "Which player scored the most touchdowns?",
     "return players ;return touchdowns of #1 ;return the number of #2 for each #1 ;return #1 where #3 is highest",
     "select project group superlative"),
    ("DROP_dev_38", "How many field goals did Kris Brown kick?",
     "return Kris Brown ;return field goals kicked by #1 ;return the number of #2", "select project aggregate"),
    ("DROP_train_39", "How many percent were not white?",
     "return percent ;return #1 that were white ;return the difference of 100 and #2", "select filter arithmetic"),
    ("DROP_train_40", "Which happened first, the battle or the treaty?",
     "return the battle ;return the treaty ;return when was #1 ;return when was #2 ;return which is the lowest of #3 , #4",
     "select select project project superlative"),
    ("HOTPOTQA_train_41", "Were Scott Derrickson and Ed Wood of the same nationality?",
     "return Scott Derrickson ;return Ed Wood ;return the nationality of #1 ;return the nationality of #2 ;return if #3 is the same as #4",
     "select select project project boolean"),
    ("HOTPOTQA_train_42", "What government position was held by the woman who portrayed Corliss Archer?",
     "return the woman who portrayed Corliss Archer ;return government position held by #1", "select project"),
    ("HOTPOTQA_dev_43", "Which magazine was started first, Arthur's Magazine or First for Women?",
     "return Arthur's Magazine ;return First for Women ;return when was #1 started ;return when was #2 started ;return which is the lowest of #3 , #4",
     "select select project project superlative"),
    ("HOTPOTQA_dev_44", "The director of the romantic comedy Big Stone Gap is based in what New York city?",
     "return the romantic comedy Big Stone Gap ;return the director of #1 ;return New York city #2 is based in", "select project project"),
    ("ATIS_train_45", "show me all flights from pittsburgh",
     "return flights ;return #1 from pittsburgh ;return #2", "select filter None"),
    ("GEO_train_46", "what is the longest river in the states that border tennessee",
     "return tennessee ;return states that border #1 ;return rivers in #2 ;return lengths of #3 ;return #3 where #4 is highest",
     "select project project project superlative"),
    ("SPIDER_train_47", "Which cities have more than 3 airports?",
     "return cities ;return airports of #1 ;return the number of #2 for each #1 ;return #1 where #3 is more than 3",
     "select project group comparative"),
    ("SPIDER_dev_48", "List all song names sorted by their length.",
     "return songs ;return names of #1 ;return lengths of #1 ;return #2 sorted by #3", "select project project sort"),
    ("CLEVR_dev_49", "What number of rubber things are left of the cube?",
     "return the cube ;return objects left of #1 ;return #2 that are rubber ;return #3 ;return the number of #3",
     "select project filter None aggregate"),
    ("ACADEMIC_dev_50", "return me the papers of H. V. Jagadish after 2000 , and the papers in VLDB",
     "return H. V. Jagadish ;return papers of #1 ;return #2 after 2000 ;return VLDB ;return papers in #4 ;return #3 , #5 ;"
     "return the number of #6 ;return #6 besides #5 ;return the number of #8",
     "select project filter select project union aggregate discard aggregate"),
]

ORDER = ["select", "filter", "project", "aggregate", "group", "superlative", "comparative", "union",
         "intersection", "discard", "sort", "boolean", "arithmetic"]


def bucket(n):
    return "1-2" if n <= 2 else "3-4" if n <= 4 else "5-6" if n <= 6 else "7-8" if n <= 8 else "9+"


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    out = os.path.join(here, "..", "fixtures", "dataset", "sample.csv")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["question_id", "question_text", "decomposition", "operators", "split"])
    for qid, q, d, ops in ROWS:
        split = "dev" if "_dev_" in qid else "train"
        w.writerow([qid, q, d, str(ops.split()), split])
    with open(out, "w") as f:
        f.write(buf.getvalue())

    n = len(ROWS)
    prev = Counter()
    lengths = Counter()
    compiled = 0
    for _, _, d, ops in ROWS:
        labels = ops.split()
        assert len(labels) == len(d.split(";")), d
        for op in set(labels) - {"None"}:
            prev[op] += 1
        lengths[bucket(len(labels))] += 1
        compiled += "None" not in labels
    print("rows", n)
    for op in ORDER:
        print(f"prevalence {op} {prev[op]}/{n}")
    for b in ["1-2", "3-4", "5-6", "7-8", "9+"]:
        print(f"length {b} {lengths[b]}/{n}")
    print(f"compile {compiled}/{n}")


if __name__ == "__main__":
    main()

"""Run the bundled corpus: which tori have a nontrivial group of unramified classes?

Every row is computed by the cyclic restriction and pointwise routes, plus
the bar-resolution oracle when |G| <= 12.  The same table is printed by
``normtorus verify-paper``.

Run: python3 demos/03_vanishing_table.py
"""

from normtorus.corpus import load_corpus, run_entry

print(f"{'id':16s} {'group':15s} {'stab':8s} {'expected':10s} {'computed':10s} routes")
for entry in load_corpus():
    if entry.stretch:
        continue
    row = run_entry(entry)
    routes = ",".join(row["sha"])
    print(f"{row['id']:16s} {row['group']:15s} {row['stabilizer']:8s} {row['expected']:10s} "
          f"{str(row['computed']):10s} {routes} {'PASS' if row['pass'] else 'FAIL'}")

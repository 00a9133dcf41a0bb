"""Regenerate the bundled corpus files from the model builders."""

from pathlib import Path

from toric_contact.models import corpus
from toric_contact.problem import emit_problem

OUT = Path(__file__).resolve().parents[1] / "src" / "toric_contact" / "corpus"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, problem in corpus().items():
        path = OUT / f"{name}.json"
        path.write_text(emit_problem(problem), encoding="utf-8")
        print(path.relative_to(OUT.parents[2]))


if __name__ == "__main__":
    main()

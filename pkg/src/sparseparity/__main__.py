"""Allow ``python -m sparseparity``."""

from .harness import main

if __name__ == "__main__":
    main()

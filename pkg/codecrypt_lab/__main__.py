"""Allow running as: python -m codecrypt_lab"""

from codecrypt_lab.cli import main

if __name__ == "__main__":
    main()

import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

DATA = os.path.join(os.path.dirname(__file__), "data")

import importlib.util

# the primary suite must stay runnable when this companion isn't installed
if importlib.util.find_spec("ringplots") is None:
    collect_ignore = ["test_plots.py"]

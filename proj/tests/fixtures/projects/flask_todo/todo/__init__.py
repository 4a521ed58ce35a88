from flask import Flask

from todo.api.items import items_bp


def create_app():
    app = Flask(__name__)
    app.register_blueprint(items_bp)
    return app

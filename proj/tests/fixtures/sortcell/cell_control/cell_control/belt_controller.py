import rclpy
from rclpy.node import Node
from std_msgs.msg import Bool, Empty
from std_srvs.srv import SetBool


class BeltControllerNode(Node):
    """Runs the infeed conveyor and reports light-barrier events."""

    def __init__(self):
        super().__init__('belt_controller')
        self.command_sub = self.create_subscription(
            Bool, 'belt_command', self.on_belt_command, 10)
        self.state_pub = self.create_publisher(Bool, 'belt_state', 10)
        self.arrival_pub = self.create_publisher(Empty, 'parcel_arrival', 10)
        self.enable_srv = self.create_service(SetBool, 'set_belt_enabled', self.on_set_enabled)
        self.barrier_timer = self.create_timer(0.05, self.on_barrier_poll)
        self.enabled = True
        self.moving = False

    def on_set_enabled(self, request, response):
        self.enabled = request.data
        if not self.enabled:
            self.stop()
        response.success = True
        return response

    def on_belt_command(self, msg):
        if not self.enabled:
            return
        self.moving = msg.data
        state = Bool()
        state.data = self.moving
        self.state_pub.publish(state)

    def on_barrier_poll(self):
        if self.moving and self.end_barrier_tripped():
            self.stop()
            self.arrival_pub.publish(Empty())

    def stop(self):
        self.moving = False
        state = Bool()
        state.data = False
        self.state_pub.publish(state)

    def end_barrier_tripped(self):
        return False


def main(args=None):
    rclpy.init(args=args)
    node = BeltControllerNode()
    rclpy.spin(node)
    node.destroy_node()
    rclpy.shutdown()
